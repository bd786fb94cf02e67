//! Maximal depth of hypersurface rings `R = S/fS` with respect to Q, decided
//! from the bidegrees of the bihomogeneous irreducible factors of `f`.
//!
//! Factors split into pure-x `(a, 0)`, mixed `(a, b)` with `a, b > 0`, and
//! pure-y `(0, b)`. With `α₁` the x-degree of the pure-x part, `α₂, β₁` the
//! bidegree of the mixed part and `β₂` the y-degree of the pure-y part,
//! `cd(P, R) = m` whenever `b > 0`, so `grade(Q, R) = dim R - m = n - 1`, and
//! `mgrade(Q, R) = n - 1` exactly when a pure-y factor exists.

use std::fmt;

use crate::error::{Error, Result};
use crate::homology::{AxisIdeal, Subquotient};
use crate::invariants::{grade, mgrade};
use crate::ring::{Monomial, MonomialIdeal, RingSpec};

/// Bidegrees of the irreducible factors of `f`, in canonical sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactorProfile {
    factors: Vec<(u32, u32)>,
}

impl FactorProfile {
    pub fn new(factors: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut factors: Vec<(u32, u32)> = factors.into_iter().collect();
        if factors.is_empty() {
            return Err(Error::BadProfile("no factors".into()));
        }
        if factors.contains(&(0, 0)) {
            return Err(Error::BadProfile("factor of bidegree (0,0)".into()));
        }
        factors.sort_unstable();
        Ok(FactorProfile { factors })
    }

    /// One factor per variable power of a non-unit monomial.
    pub fn from_monomial(f: &Monomial, ring: &RingSpec) -> Result<Self> {
        if f.len() != ring.nvars() {
            return Err(Error::DimensionMismatch { expected: ring.nvars(), found: f.len() });
        }
        FactorProfile::new(f.exps().iter().enumerate().filter(|(_, &e)| e > 0).map(|(v, &e)| {
            if ring.is_x(v) {
                (e, 0)
            } else {
                (0, e)
            }
        }))
    }

    pub fn factors(&self) -> &[(u32, u32)] {
        &self.factors
    }

    pub fn alpha1(&self) -> u32 {
        self.factors.iter().filter(|f| f.1 == 0).map(|f| f.0).sum()
    }

    pub fn alpha2(&self) -> u32 {
        self.mixed().map(|f| f.0).sum()
    }

    pub fn beta1(&self) -> u32 {
        self.mixed().map(|f| f.1).sum()
    }

    pub fn beta2(&self) -> u32 {
        self.factors.iter().filter(|f| f.0 == 0).map(|f| f.1).sum()
    }

    /// Total bidegree `(a, b)` of `f`.
    pub fn bidegree(&self) -> (u32, u32) {
        (self.alpha1() + self.alpha2(), self.beta1() + self.beta2())
    }

    fn mixed(&self) -> impl Iterator<Item = &(u32, u32)> {
        self.factors.iter().filter(|f| f.0 > 0 && f.1 > 0)
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.factors.iter().map(|(a, b)| format!("({a},{b})")).collect();
        parts.join(" ")
    }
}

impl fmt::Display for FactorProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Which of the theorem's three shapes `f` has, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremCase {
    A,
    B,
    C,
    None,
}

impl TheoremCase {
    pub fn label(self) -> &'static str {
        match self {
            TheoremCase::A => "a",
            TheoremCase::B => "b",
            TheoremCase::C => "c",
            TheoremCase::None => "none",
        }
    }
}

/// The case split of the proof. Cases 1 and 2 need mixed and pure-y factors,
/// case 3 pure-x and pure-y factors only, cases 4 and 5 mixed factors without
/// pure-y ones. Profiles with only pure-x or only pure-y factors fall outside
/// the five cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProofCase {
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
    PureX,
    PureY,
}

impl ProofCase {
    pub fn label(self) -> &'static str {
        match self {
            ProofCase::Case1 => "1",
            ProofCase::Case2 => "2",
            ProofCase::Case3 => "3",
            ProofCase::Case4 => "4",
            ProofCase::Case5 => "5",
            ProofCase::PureX => "pure-x",
            ProofCase::PureY => "pure-y",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypersurfaceVerdict {
    pub maximal_depth: bool,
    pub case_label: TheoremCase,
    pub grade_q: usize,
    pub mgrade_q: usize,
    pub case_trace: ProofCase,
}

fn theorem_case(p: &FactorProfile) -> TheoremCase {
    let (a1, a2, b1, b2) = (p.alpha1(), p.alpha2(), p.beta1(), p.beta2());
    if a1 > 0 && a2 > 0 && b1 > 0 && b2 > 0 {
        TheoremCase::A
    } else if a1 == 0 && a2 > 0 && b1 > 0 && b2 > 0 {
        TheoremCase::B
    } else if a2 == 0 && b1 == 0 {
        TheoremCase::C
    } else {
        TheoremCase::None
    }
}

fn proof_case(p: &FactorProfile) -> ProofCase {
    let mixed = p.alpha2() > 0;
    match (mixed, p.alpha1() > 0, p.beta2() > 0) {
        (true, true, true) => ProofCase::Case1,
        (true, false, true) => ProofCase::Case2,
        (true, true, false) => ProofCase::Case4,
        (true, false, false) => ProofCase::Case5,
        (false, true, true) => ProofCase::Case3,
        (false, true, false) => ProofCase::PureX,
        (false, false, _) => ProofCase::PureY,
    }
}

/// Maximal depth of `S/fS` with respect to Q from the factor profile of `f`.
pub fn classify(profile: &FactorProfile, ring: &RingSpec) -> Result<HypersurfaceVerdict> {
    if ring.m() == 0 || ring.n() == 0 {
        return Err(Error::BadRing(format!("need m, n >= 1, got m = {}, n = {}", ring.m(), ring.n())));
    }
    let n = ring.n();
    let (_, b) = profile.bidegree();
    let grade_q = if b > 0 { n - 1 } else { n };
    let mgrade_q = if profile.beta2() > 0 { n - 1 } else { n };
    let case_label = theorem_case(profile);
    let maximal_depth = grade_q == mgrade_q;
    if maximal_depth != (case_label != TheoremCase::None) {
        return Err(Error::Inconsistency(format!(
            "profile {profile}: grade {grade_q}, mgrade {mgrade_q}, case {}",
            case_label.label()
        )));
    }
    Ok(HypersurfaceVerdict {
        maximal_depth,
        case_label,
        grade_q,
        mgrade_q,
        case_trace: proof_case(profile),
    })
}

/// Compares `classify` on the variable factorization of a monomial `f` with
/// the engine's grade and mgrade of `S/(f)`.
pub fn monomial_crosscheck(f: &Monomial, ring: &RingSpec) -> Result<bool> {
    let profile = FactorProfile::from_monomial(f, ring)?;
    let verdict = classify(&profile, ring)?;
    let ideal = MonomialIdeal::new(*ring, [f.clone()])?;
    let q = AxisIdeal::y_block(ring)?;
    let g = grade(&Subquotient::cyclic(ideal.clone()), &q)?;
    let mg = mgrade(&ideal, &q)?;
    Ok(verdict.grade_q == g && verdict.mgrade_q == mg && verdict.maximal_depth == (g == mg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(m: usize, n: usize) -> RingSpec {
        RingSpec::new(m, n).unwrap()
    }

    fn verdict(factors: &[(u32, u32)], m: usize, n: usize) -> HypersurfaceVerdict {
        classify(&FactorProfile::new(factors.iter().copied()).unwrap(), &ring(m, n)).unwrap()
    }

    #[test]
    fn theorem_shapes() {
        let v = verdict(&[(1, 0), (1, 1), (0, 1)], 2, 3);
        assert_eq!(v.case_label, TheoremCase::A);
        assert_eq!(v.case_trace, ProofCase::Case1);
        assert!(v.maximal_depth);
        assert_eq!((v.grade_q, v.mgrade_q), (2, 2));

        let v = verdict(&[(1, 1)], 2, 2);
        assert_eq!(v.case_label, TheoremCase::None);
        assert_eq!(v.case_trace, ProofCase::Case5);
        assert_eq!((v.grade_q, v.mgrade_q, v.maximal_depth), (1, 2, false));

        let v = verdict(&[(2, 0)], 2, 2);
        assert_eq!(v.case_label, TheoremCase::C);
        assert_eq!((v.grade_q, v.mgrade_q, v.maximal_depth), (2, 2, true));

        let v = verdict(&[(2, 1), (0, 3)], 1, 2);
        assert_eq!((v.case_label, v.case_trace), (TheoremCase::B, ProofCase::Case2));

        let v = verdict(&[(1, 0), (1, 2)], 1, 2);
        assert_eq!((v.case_label, v.case_trace), (TheoremCase::None, ProofCase::Case4));
        assert_eq!((v.grade_q, v.mgrade_q), (1, 2));
    }

    #[test]
    fn profile_errors() {
        assert!(matches!(FactorProfile::new([]), Err(Error::BadProfile(_))));
        assert!(matches!(FactorProfile::new([(1, 0), (0, 0)]), Err(Error::BadProfile(_))));
        let p = FactorProfile::new([(1, 1)]).unwrap();
        let r = RingSpec::new(2, 0).unwrap();
        assert!(matches!(classify(&p, &r), Err(Error::BadRing(_))));
    }

    #[test]
    fn monomial_profiles() {
        let r = ring(2, 2);
        let f = Monomial::new(vec![2, 0, 1, 3]);
        let p = FactorProfile::from_monomial(&f, &r).unwrap();
        assert_eq!(p.factors(), &[(0, 1), (0, 3), (2, 0)]);
        assert_eq!(p.bidegree(), (2, 4));
        assert!(matches!(
            FactorProfile::from_monomial(&Monomial::one(4), &r),
            Err(Error::BadProfile(_))
        ));
        for exps in [[1, 0, 1, 0], [1, 1, 0, 0], [0, 0, 1, 1]] {
            assert!(monomial_crosscheck(&Monomial::new(exps.to_vec()), &r).unwrap());
        }
    }
}
