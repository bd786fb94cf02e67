//! grade, cd and mgrade with respect to an axis ideal, and the maximal-depth
//! verdicts built from them.
//!
//! The Čech complex on the variables of `Z` respects the exponents of the
//! complementary variables, so `H^i_Z(J/J′)` splits as a direct sum over
//! complementary exponent patterns `a` of `H^i` of the K[Z]-module
//! `((J : x^a) ∩ K[Z]) / ((J′ : x^a) ∩ K[Z])`. Colon ideals stop changing
//! once `a` reaches the lcm box, so finitely many capped patterns cover all
//! fibers.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::homology::{box_points, depth_module, AxisIdeal, Subquotient};
use crate::ring::{Characteristic, Monomial, MonomialIdeal, PrimeSupport, RingSpec};

/// A class of complementary exponent patterns sharing one fiber module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberClass {
    /// Capped patterns over the complement of the axis, in enumeration order.
    pub patterns: Vec<Vec<u32>>,
    /// Per-coordinate caps (the lcm box restricted to the complement).
    pub caps: Vec<u32>,
    /// The fiber as a module over K[Z] (a ring on the axis variables only).
    pub fiber: Subquotient,
    /// Some pattern reaches its cap, so the class stands for infinitely many slices.
    pub infinite_family: bool,
}

impl FiberClass {
    pub fn pattern(&self) -> &[u32] {
        &self.patterns[0]
    }

    /// Whether `pattern` (over the complement) is the capped pattern of a slice
    /// that reaches the cap in some coordinate.
    pub(crate) fn is_capped(pattern: &[u32], caps: &[u32]) -> bool {
        pattern.iter().zip(caps).any(|(a, c)| a == c)
    }
}

/// The polynomial ring on a subset of variables, keeping the block split.
pub(crate) fn sub_ring(ring: &RingSpec, vars: &[usize]) -> RingSpec {
    let mx = vars.iter().filter(|&&v| ring.is_x(v)).count();
    RingSpec::with_characteristic(mx, vars.len() - mx, ring.characteristic())
        .expect("nonempty variable subset")
}

/// Rewrites an ideal whose generators live on `vars` into `sub_ring(vars)`.
pub(crate) fn project(ideal: &MonomialIdeal, vars: &[usize], target: RingSpec) -> MonomialIdeal {
    let gens = ideal
        .gens()
        .iter()
        .map(|g| Monomial::new(vars.iter().map(|&v| g.exps()[v]).collect()))
        .collect();
    MonomialIdeal::from_raw(target, gens)
}

/// Enumerates the capped complementary patterns and their fibers; patterns
/// with identical fibers are merged.
pub fn fibers(module: &Subquotient, axis: &AxisIdeal) -> Result<Vec<FiberClass>> {
    if module.is_zero() {
        return Err(Error::ZeroModule);
    }
    let ring = *module.ring();
    let rest = axis.complement(&ring);
    let lambda = module.lcm_box();
    let caps: Vec<u32> = rest.iter().map(|&v| lambda[v]).collect();
    let target = sub_ring(&ring, axis.vars());

    let mut classes: Vec<FiberClass> = Vec::new();
    let mut index: HashMap<Subquotient, usize> = HashMap::new();
    for pattern in box_points(&caps) {
        let mut shift = vec![0u32; ring.nvars()];
        for (&v, &a) in rest.iter().zip(&pattern) {
            shift[v] = a;
        }
        let top = project(&module.top().colon_exps(&shift).restrict_to(axis.vars()), axis.vars(), target);
        let bottom = project(&module.bottom().colon_exps(&shift).restrict_to(axis.vars()), axis.vars(), target);
        let fiber = Subquotient::new(top, bottom)?;
        let capped = FiberClass::is_capped(&pattern, &caps);
        match index.get(&fiber) {
            Some(&k) => {
                classes[k].patterns.push(pattern);
                classes[k].infinite_family |= capped;
            }
            None => {
                index.insert(fiber.clone(), classes.len());
                classes.push(FiberClass {
                    patterns: vec![pattern],
                    caps: caps.clone(),
                    fiber,
                    infinite_family: capped,
                });
            }
        }
    }
    Ok(classes)
}

/// `grade(Z, N)`: the minimum depth of a nonzero fiber.
pub fn grade(module: &Subquotient, axis: &AxisIdeal) -> Result<usize> {
    let classes = fibers(module, axis)?;
    let depths: Vec<usize> = classes
        .par_iter()
        .filter(|c| !c.fiber.is_zero())
        .map(|c| depth_module(&c.fiber, &AxisIdeal::all(c.fiber.ring())))
        .collect::<Result<_>>()?;
    Ok(*depths.iter().min().expect("nonzero module has a nonzero fiber"))
}

/// `cd(Z, N)`: the maximum dimension of a nonzero fiber. For `N = S/I` this
/// is checked against `dim S/(P′ + I)`, `P′` the complementary axis ideal.
pub fn cd(module: &Subquotient, axis: &AxisIdeal) -> Result<usize> {
    let classes = fibers(module, axis)?;
    let dims: Vec<usize> = classes
        .par_iter()
        .filter(|c| !c.fiber.is_zero())
        .map(|c| c.fiber.dim())
        .collect::<Result<_>>()?;
    let value = *dims.iter().max().expect("nonzero module has a nonzero fiber");
    if module.top().is_unit() {
        let ring = module.ring();
        let complement = MonomialIdeal::from_vars(*ring, axis.complement(ring));
        let expected = module.bottom().sum(&complement)?.dim_quotient()?;
        if expected != value {
            return Err(Error::Inconsistency(format!(
                "cd from fibers {value} but dim S/(P'+I) = {expected}"
            )));
        }
    }
    Ok(value)
}

/// `cd(Z, S/p) = |Z ∖ p|`.
pub fn cd_prime(prime: &PrimeSupport, axis: &AxisIdeal) -> usize {
    axis.vars().iter().filter(|&&v| !prime.contains(v)).count()
}

/// `min { cd(Z, S/p) : p ∈ primes }`.
pub fn mgrade_of_primes<'a>(primes: impl IntoIterator<Item = &'a PrimeSupport>, axis: &AxisIdeal) -> Option<usize> {
    primes.into_iter().map(|p| cd_prime(p, axis)).min()
}

/// `mgrade(Z, S/I)` over the associated primes of `I`. For `Z = Q` it is
/// checked against `n − d`, `d` the largest y-height of an associated prime.
pub fn mgrade(ideal: &MonomialIdeal, axis: &AxisIdeal) -> Result<usize> {
    let ass = ideal.associated_primes()?;
    let value = mgrade_of_primes(&ass, axis).expect("proper ideal has an associated prime");
    let ring = ideal.ring();
    if ring.n() > 0 && axis.vars() == AxisIdeal::y_block(ring)?.vars() {
        let d = ass
            .iter()
            .map(|p| p.vars().iter().filter(|&&v| !ring.is_x(v)).count())
            .max()
            .unwrap_or(0);
        if ring.n() - d != value {
            return Err(Error::Inconsistency(format!(
                "mgrade {value} but n - d = {}",
                ring.n() - d
            )));
        }
    }
    Ok(value)
}

/// Ordinary depth of `N` (with respect to all variables).
pub fn ordinary_depth(module: &Subquotient) -> Result<usize> {
    depth_module(module, &AxisIdeal::all(module.ring()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub axis: AxisIdeal,
    pub characteristic: Characteristic,
    pub associated_primes: BTreeSet<PrimeSupport>,
    pub grade: usize,
    pub cd: usize,
    pub mgrade: usize,
    pub dim: usize,
    /// Ordinary depth of S/I.
    pub depth: usize,
    /// `grade = mgrade`.
    pub maximal_depth: bool,
    /// An associated prime with `cd(Z, S/p) = grade`, when maximal depth holds.
    pub witness_prime: Option<PrimeSupport>,
    /// `grade = cd`.
    pub cm_wrt_axis: bool,
    /// `depth = dim`.
    pub cm_ordinary: bool,
}

/// All invariants of `S/I` with respect to `axis`.
pub fn analyze(ideal: &MonomialIdeal, axis: &AxisIdeal) -> Result<InvariantReport> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let module = Subquotient::cyclic(ideal.clone());
    let associated_primes = ideal.associated_primes()?;
    let grade = grade(&module, axis)?;
    let cd = cd(&module, axis)?;
    let mgrade = mgrade(ideal, axis)?;
    let dim = ideal.dim_quotient()?;
    let depth = ordinary_depth(&module)?;
    if !(grade <= mgrade && mgrade <= cd && cd <= dim) {
        return Err(Error::Inconsistency(format!(
            "expected grade {grade} <= mgrade {mgrade} <= cd {cd} <= dim {dim}"
        )));
    }
    let maximal_depth = grade == mgrade;
    let witness_prime = maximal_depth
        .then(|| associated_primes.iter().find(|p| cd_prime(p, axis) == grade).cloned())
        .flatten();
    Ok(InvariantReport {
        axis: axis.clone(),
        characteristic: ideal.ring().characteristic(),
        associated_primes,
        grade,
        cd,
        mgrade,
        dim,
        depth,
        maximal_depth,
        witness_prime,
        cm_wrt_axis: grade == cd,
        cm_ordinary: depth == dim,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectSumVerdict {
    pub verdict: bool,
    /// A summand of least grade, with maximal depth when the verdict holds.
    pub achiever: usize,
    pub grades: Vec<usize>,
    pub mgrades: Vec<usize>,
}

/// Maximal depth of `⊕ S/I_k`: some summand of least grade has maximal depth.
/// Checked against `min grade = min mgrade`, since grade and mgrade of a
/// direct sum are the minima over the summands.
pub fn direct_sum_verdict(ideals: &[MonomialIdeal], axis: &AxisIdeal) -> Result<DirectSumVerdict> {
    let first = ideals.first().ok_or(Error::EmptyList)?;
    if ideals.iter().any(|i| i.ring() != first.ring()) {
        return Err(Error::RingMismatch);
    }
    let reports: Vec<InvariantReport> = ideals.iter().map(|i| analyze(i, axis)).collect::<Result<_>>()?;
    let grades: Vec<usize> = reports.iter().map(|r| r.grade).collect();
    let mgrades: Vec<usize> = reports.iter().map(|r| r.mgrade).collect();
    let least = *grades.iter().min().unwrap();
    let achiever = reports
        .iter()
        .position(|r| r.grade == least && r.maximal_depth)
        .or_else(|| grades.iter().position(|&g| g == least))
        .unwrap();
    let verdict = reports[achiever].maximal_depth;
    let direct = least == *mgrades.iter().min().unwrap();
    if verdict != direct {
        return Err(Error::Inconsistency(format!(
            "summand criterion says {verdict}, min grade = min mgrade says {direct}"
        )));
    }
    Ok(DirectSumVerdict {
        verdict,
        achiever,
        grades,
        mgrades,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorVerdict {
    pub verdict: bool,
    pub grade: usize,
    pub mgrade: usize,
    /// Ordinary depth of K[y]/Iy.
    pub depth_y: usize,
    /// `min { dim K[y]/p : p ∈ Ass(K[y]/Iy) }`.
    pub mdepth_y: usize,
}

/// Maximal depth with respect to Q of `K[x]/Ix ⊗_K K[y]/Iy = S/(Ix + Iy)`,
/// checked against the ordinary maximal-depth property of `K[y]/Iy`.
pub fn tensor_verdict(ix: &MonomialIdeal, iy: &MonomialIdeal) -> Result<TensorVerdict> {
    if ix.ring() != iy.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = *ix.ring();
    if let Some(g) = ix.gens().iter().find(|g| g.support().any(|v| !ring.is_x(v))) {
        return Err(Error::WrongBlock(g.render(&ring)));
    }
    if let Some(g) = iy.gens().iter().find(|g| g.support().any(|v| ring.is_x(v))) {
        return Err(Error::WrongBlock(g.render(&ring)));
    }
    if ix.is_unit() || iy.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let q = AxisIdeal::y_block(&ring)?;
    let joint = ix.sum(iy)?;
    let report = analyze(&joint, &q)?;

    let y_vars: Vec<usize> = ring.y_vars().collect();
    let y_ring = sub_ring(&ring, &y_vars);
    let iy_local = project(iy, &y_vars, y_ring);
    let depth_y = ordinary_depth(&Subquotient::cyclic(iy_local.clone()))?;
    let mdepth_y = iy_local
        .associated_primes()?
        .iter()
        .map(|p| ring.n() - p.height())
        .min()
        .unwrap();

    let expected_ass: BTreeSet<PrimeSupport> = ix
        .associated_primes()?
        .iter()
        .flat_map(|p1| iy.associated_primes().unwrap().into_iter().map(move |p2| p1.union(&p2)))
        .collect();
    if expected_ass != report.associated_primes {
        return Err(Error::Inconsistency("Ass(S/(Ix+Iy)) is not {p1 + p2}".into()));
    }
    if report.grade != depth_y || report.mgrade != mdepth_y {
        return Err(Error::Inconsistency(format!(
            "grade/mgrade ({}, {}) vs depth/mdepth of K[y]/Iy ({depth_y}, {mdepth_y})",
            report.grade, report.mgrade
        )));
    }
    if report.maximal_depth != (depth_y == mdepth_y) {
        return Err(Error::Inconsistency("tensor verdict disagrees with K[y]/Iy".into()));
    }
    Ok(TensorVerdict {
        verdict: report.maximal_depth,
        grade: report.grade,
        mgrade: report.mgrade,
        depth_y,
        mdepth_y,
    })
}
