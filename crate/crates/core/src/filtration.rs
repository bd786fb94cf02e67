//! Dimension filtration of S/I with respect to an axis ideal and the
//! sequentially Cohen–Macaulay test.
//!
//! With an irredundant primary decomposition `I = ⋂ q_j`, the step of the
//! filtration with cd value `γ` is `D = J/I` where `J` intersects the
//! components whose prime has cd greater than `γ`.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::homology::{AxisIdeal, Subquotient};
use crate::invariants::{cd, cd_prime, grade, mgrade_of_primes};
use crate::ring::{MonomialIdeal, PrimeSupport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationStep {
    /// `J_i`, so that `D_i = J_i / I`.
    pub ideal: MonomialIdeal,
    /// `γ_i = cd(Z, D_i)`.
    pub cd: usize,
    /// `Ass(D_i / D_{i-1})`: the associated primes of S/I with cd equal to `γ_i`.
    pub primes: BTreeSet<PrimeSupport>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationLadder {
    pub base: MonomialIdeal,
    pub axis: AxisIdeal,
    pub steps: Vec<FiltrationStep>,
}

impl FiltrationLadder {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `J_i` for `i = 0..=r`, with `J_0 = I`.
    pub fn ideal(&self, i: usize) -> &MonomialIdeal {
        if i == 0 {
            &self.base
        } else {
            &self.steps[i - 1].ideal
        }
    }

    /// `D_i = J_i / I` for `i = 1..=r`.
    pub fn submodule(&self, i: usize) -> Subquotient {
        Subquotient::new(self.ideal(i).clone(), self.base.clone()).expect("ladder is increasing")
    }

    /// `D_i / D_{i-1} = J_i / J_{i-1}` for `i = 1..=r`.
    pub fn quotient(&self, i: usize) -> Subquotient {
        Subquotient::new(self.ideal(i).clone(), self.ideal(i - 1).clone()).expect("ladder is increasing")
    }
}

fn check_proper_nonzero(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    Ok(())
}

/// Builds the dimension filtration and verifies it: strict increase, `cd(D_i) = γ_i`,
/// `Ass(D_i) = {p ∈ Ass(S/I) : cd(S/p) ≤ γ_i}` and
/// `Ass(S/J_i) = Ass(S/I) ∖ Ass(D_i)`, each recomputed independently of the
/// decomposition.
pub fn dimension_filtration(ideal: &MonomialIdeal, axis: &AxisIdeal) -> Result<FiltrationLadder> {
    check_proper_nonzero(ideal)?;
    let ring = *ideal.ring();
    let components = ideal.primary_decomposition()?;
    let ass: BTreeSet<PrimeSupport> = components.iter().map(|c| c.radical.clone()).collect();
    let gammas: BTreeSet<usize> = ass.iter().map(|p| cd_prime(p, axis)).collect();

    let mut steps = Vec::with_capacity(gammas.len());
    for &gamma in &gammas {
        let mut j = MonomialIdeal::unit(ring);
        for c in components.iter().filter(|c| cd_prime(&c.radical, axis) > gamma) {
            j = j.intersect(&c.component)?;
        }
        let primes = ass.iter().filter(|p| cd_prime(p, axis) == gamma).cloned().collect();
        steps.push(FiltrationStep { ideal: j, cd: gamma, primes });
    }
    let ladder = FiltrationLadder {
        base: ideal.clone(),
        axis: axis.clone(),
        steps,
    };

    (1..=ladder.len()).into_par_iter().try_for_each(|i| -> Result<()> {
        let step = &ladder.steps[i - 1];
        let prev = ladder.ideal(i - 1);
        if !prev.is_subset(&step.ideal) || *prev == step.ideal {
            return Err(Error::Inconsistency(format!("filtration step {i} is not strict")));
        }
        let d = ladder.submodule(i);
        let cd_d = cd(&d, axis)?;
        if cd_d != step.cd {
            return Err(Error::Inconsistency(format!(
                "cd(D_{i}) = {cd_d}, expected {}",
                step.cd
            )));
        }
        let ass_d = d.associated_primes()?;
        let expected: BTreeSet<_> = ass.iter().filter(|p| cd_prime(p, axis) <= step.cd).cloned().collect();
        if ass_d != expected {
            return Err(Error::Inconsistency(format!("Ass(D_{i}) does not match the cd bound")));
        }
        let ass_rest = if step.ideal.is_unit() {
            BTreeSet::new()
        } else {
            step.ideal.associated_primes()?
        };
        let expected: BTreeSet<_> = ass.difference(&ass_d).cloned().collect();
        if ass_rest != expected {
            return Err(Error::Inconsistency(format!("Ass(M/D_{i}) != Ass(M) - Ass(D_{i})")));
        }
        Ok(())
    })?;
    if !ladder.steps.last().is_some_and(|s| s.ideal.is_unit()) {
        return Err(Error::Inconsistency("filtration does not end at S".into()));
    }
    Ok(ladder)
}

/// `Ass(D_i / D_{i-1})` for each step, recomputed from annihilators of the
/// quotient modules, checked against the cd partition of `Ass(S/I)` and
/// against the union formula.
pub fn ass_quotients(ladder: &FiltrationLadder) -> Result<Vec<BTreeSet<PrimeSupport>>> {
    let blocks: Vec<BTreeSet<PrimeSupport>> = (1..=ladder.len())
        .into_par_iter()
        .map(|i| ladder.quotient(i).associated_primes())
        .collect::<Result<_>>()?;
    for (block, step) in blocks.iter().zip(&ladder.steps) {
        if *block != step.primes {
            return Err(Error::Inconsistency(format!(
                "Ass of the cd-{} quotient differs from the primes with that cd",
                step.cd
            )));
        }
    }
    let union: BTreeSet<PrimeSupport> = blocks.iter().flatten().cloned().collect();
    if union != ladder.base.associated_primes()? {
        return Err(Error::Inconsistency("Ass(M) is not the union of the quotient Ass sets".into()));
    }
    Ok(blocks)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepInvariants {
    pub gamma: usize,
    pub grade: usize,
    pub cd: usize,
    pub is_cm: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqCmReport {
    pub verdict: bool,
    pub steps: Vec<StepInvariants>,
}

/// Sequential Cohen–Macaulayness: every quotient `J_i / J_{i-1}` of the
/// dimension filtration has `grade = cd`.
pub fn sequentially_cm(ideal: &MonomialIdeal, axis: &AxisIdeal) -> Result<SeqCmReport> {
    let ladder = dimension_filtration(ideal, axis)?;
    sequentially_cm_of(&ladder)
}

pub fn sequentially_cm_of(ladder: &FiltrationLadder) -> Result<SeqCmReport> {
    let steps: Vec<StepInvariants> = (1..=ladder.len())
        .into_par_iter()
        .map(|i| {
            let quotient = ladder.quotient(i);
            let gamma = ladder.steps[i - 1].cd;
            let g = grade(&quotient, &ladder.axis)?;
            let c = cd(&quotient, &ladder.axis)?;
            if c != gamma {
                return Err(Error::Inconsistency(format!(
                    "cd of quotient {i} is {c}, filtration says {gamma}"
                )));
            }
            Ok(StepInvariants {
                gamma,
                grade: g,
                cd: c,
                is_cm: g == c,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SeqCmReport {
        verdict: steps.iter().all(|s| s.is_cm),
        steps,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MgradeConstancy {
    /// Every `mgrade(Z, D_i)` equals `γ_1`.
    pub holds: bool,
    pub value: usize,
    pub per_step: Vec<usize>,
}

/// `mgrade(Z, D_i)` for each step, from the associated primes of `D_i`
/// recomputed by annihilators; all of them should equal `γ_1`.
pub fn mgrade_constancy(ideal: &MonomialIdeal, axis: &AxisIdeal) -> Result<MgradeConstancy> {
    let ladder = dimension_filtration(ideal, axis)?;
    mgrade_constancy_of(&ladder)
}

pub fn mgrade_constancy_of(ladder: &FiltrationLadder) -> Result<MgradeConstancy> {
    let value = ladder.steps[0].cd;
    let per_step: Vec<usize> = (1..=ladder.len())
        .into_par_iter()
        .map(|i| {
            let ass = ladder.submodule(i).associated_primes()?;
            Ok(mgrade_of_primes(&ass, &ladder.axis).expect("nonzero submodule"))
        })
        .collect::<Result<_>>()?;
    Ok(MgradeConstancy {
        holds: per_step.iter().all(|&v| v == value),
        value,
        per_step,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn ring(m: usize, n: usize) -> RingSpec {
        RingSpec::new(m, n).unwrap()
    }

    fn mixed() -> MonomialIdeal {
        MonomialIdeal::from_exps(
            ring(2, 4),
            &[
                &[1, 1, 0, 0, 0, 0],
                &[1, 0, 0, 0, 1, 0],
                &[1, 0, 0, 0, 0, 1],
                &[0, 1, 1, 0, 0, 0],
                &[0, 0, 1, 0, 1, 0],
                &[0, 0, 1, 0, 0, 1],
                &[0, 0, 0, 1, 0, 1],
                &[0, 0, 0, 1, 1, 0],
            ],
        )
        .unwrap()
    }

    fn two_planes() -> MonomialIdeal {
        let r = ring(2, 4);
        MonomialIdeal::from_vars(r, [0, 2, 3])
            .intersect(&MonomialIdeal::from_vars(r, [1, 4, 5]))
            .unwrap()
    }

    #[test]
    fn mixed_ladder() {
        let i = mixed();
        let q = AxisIdeal::y_block(i.ring()).unwrap();
        let ladder = dimension_filtration(&i, &q).unwrap();
        assert_eq!(ladder.steps.iter().map(|s| s.cd).collect::<Vec<_>>(), vec![1, 2]);
        let r = *i.ring();
        let j1 = MonomialIdeal::from_vars(r, [0, 2, 3])
            .intersect(&MonomialIdeal::from_vars(r, [1, 4, 5]))
            .unwrap();
        assert_eq!(ladder.steps[0].ideal, j1);
        assert!(ladder.steps[1].ideal.is_unit());
        let blocks = ass_quotients(&ladder).unwrap();
        assert_eq!(blocks[0], BTreeSet::from([PrimeSupport::new([0, 2, 4, 5])]));
        assert_eq!(
            blocks[1],
            BTreeSet::from([PrimeSupport::new([0, 2, 3]), PrimeSupport::new([1, 4, 5])])
        );
        assert_eq!(ladder.submodule(1).associated_primes().unwrap(), blocks[0]);

        let seq = sequentially_cm(&i, &q).unwrap();
        assert!(!seq.verdict);
        let constancy = mgrade_constancy(&i, &q).unwrap();
        assert!(constancy.holds);
        assert_eq!(constancy.value, 1);
    }

    #[test]
    fn single_step_ladders() {
        let i = two_planes();
        let q = AxisIdeal::y_block(i.ring()).unwrap();
        let ladder = dimension_filtration(&i, &q).unwrap();
        assert_eq!(ladder.len(), 1);
        assert_eq!(ass_quotients(&ladder).unwrap()[0].len(), 2);
        assert!(mgrade_constancy(&i, &q).unwrap().holds);

        let r = ring(1, 2);
        let prime = MonomialIdeal::from_vars(r, [0, 1]);
        let ladder = dimension_filtration(&prime, &AxisIdeal::y_block(&r).unwrap()).unwrap();
        assert_eq!(ladder.len(), 1);
        assert_eq!(ass_quotients(&ladder).unwrap()[0], prime.associated_primes().unwrap());
    }

    #[test]
    fn x1y1_is_sequentially_cm() {
        let r = ring(1, 2);
        let i = MonomialIdeal::from_exps(r, &[&[1, 1, 0]]).unwrap();
        let q = AxisIdeal::y_block(&r).unwrap();
        let seq = sequentially_cm(&i, &q).unwrap();
        assert!(seq.verdict);
        assert_eq!(
            seq.steps,
            vec![
                StepInvariants { gamma: 1, grade: 1, cd: 1, is_cm: true },
                StepInvariants { gamma: 2, grade: 2, cd: 2, is_cm: true },
            ]
        );
    }

    #[test]
    fn errors() {
        let r = ring(1, 1);
        let q = AxisIdeal::y_block(&r).unwrap();
        assert_eq!(dimension_filtration(&MonomialIdeal::unit(r), &q), Err(Error::UnitIdeal));
        assert_eq!(dimension_filtration(&MonomialIdeal::zero(r), &q), Err(Error::ZeroIdeal));
    }
}
