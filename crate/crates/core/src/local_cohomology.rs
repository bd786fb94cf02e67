//! Local cohomology `H^i_Z(S/I)` fiber by fiber, finite generation, and the
//! generalized Cohen–Macaulay property.
//!
//! Finite generation: past the caps, multiplication by a complementary
//! variable is an isomorphism between consecutive fibers, so `H^i_Z(N)` is
//! generated by the finitely many capped fibers' contributions. It is finitely
//! generated iff each capped fiber's `H^i` (a local cohomology module over
//! K[Z]) has finite length. A fiber's `H^i` has finite length iff it vanishes
//! on every boundary degree class, i.e. classes with a coordinate at -1
//! (standing for all negative values) or at the cap (standing for all larger
//! values).

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::filtration::sequentially_cm;
use crate::homology::{cech_dims, cech_scan, AxisIdeal, FineDegree, Subquotient};
use crate::invariants::{analyze, cd, cd_prime, fibers, FiberClass};
use crate::ring::MonomialIdeal;

/// A vector-space dimension that may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dim {
    Finite(usize),
    Infinite,
}

impl Dim {
    pub fn is_zero(self) -> bool {
        self == Dim::Finite(0)
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Dim::Finite(d) => Some(d),
            Dim::Infinite => None,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(d) => write!(f, "{d}"),
            Dim::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberLc {
    /// Representative capped pattern over the complement of the axis.
    pub pattern: Vec<u32>,
    /// Number of capped patterns sharing this fiber.
    pub multiplicity: usize,
    pub infinite_family: bool,
    pub finite_length: bool,
    /// `dim_K H^i` of one fiber of the class.
    pub total_dim: Dim,
    /// A full fine degree on a boundary class where `H^i` is nonzero.
    pub witness_degree: Option<FineDegree>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcReport {
    pub index: usize,
    pub axis: AxisIdeal,
    pub per_fiber: Vec<FiberLc>,
    pub finitely_generated: bool,
    /// `dim_K H^i_Z(S/I)`.
    pub total_dim: Dim,
}

impl LcReport {
    pub fn is_zero(&self) -> bool {
        self.total_dim.is_zero()
    }
}

/// Per-fiber Čech scans of a module, reusable for every cohomological index.
#[derive(Debug, Clone)]
pub struct CohomologyTable {
    axis: AxisIdeal,
    nvars: usize,
    rest: Vec<usize>,
    caps: Vec<u32>,
    fibers: Vec<(FiberClass, Vec<(Vec<i64>, Vec<usize>)>)>,
}

impl CohomologyTable {
    pub fn new(module: &Subquotient, axis: &AxisIdeal) -> Result<Self> {
        let classes = fibers(module, axis)?;
        let caps = classes[0].caps.clone();
        let scanned = classes
            .into_par_iter()
            .filter(|c| !c.fiber.is_zero())
            .map(|c| {
                let scan = cech_scan(&c.fiber, &AxisIdeal::all(c.fiber.ring()));
                (c, scan)
            })
            .collect();
        Ok(CohomologyTable {
            axis: axis.clone(),
            nvars: module.ring().nvars(),
            rest: axis.complement(module.ring()),
            caps,
            fibers: scanned,
        })
    }

    /// `dim H^i_Z(N)_c` for `i = 0..=|Z|` at a full fine degree, read off the
    /// fiber of the capped complementary pattern of `c`.
    pub fn piece_dims(&self, c: &[i64]) -> Vec<usize> {
        let zero = vec![0; self.axis.len() + 1];
        if self.rest.iter().any(|&v| c[v] < 0) {
            return zero;
        }
        let pattern: Vec<u32> = self
            .rest
            .iter()
            .zip(&self.caps)
            .map(|(&v, &cap)| c[v].min(cap as i64) as u32)
            .collect();
        let local: Vec<i64> = self.axis.vars().iter().map(|&v| c[v]).collect();
        self.fibers
            .iter()
            .find(|(class, _)| class.patterns.contains(&pattern))
            .map(|(class, _)| cech_dims(&class.fiber, &AxisIdeal::all(class.fiber.ring()), &local))
            .unwrap_or(zero)
    }

    /// `(min, max)` of the indices with nonzero cohomology.
    pub fn range(&self) -> (usize, usize) {
        let nonzero: Vec<usize> = (0..=self.axis.len()).filter(|&i| !self.report(i).is_zero()).collect();
        (nonzero[0], *nonzero.last().unwrap())
    }

    fn full_degree(&self, pattern: &[u32], local: &[i64]) -> FineDegree {
        let mut out = vec![0i64; self.nvars];
        for (&v, &a) in self.rest.iter().zip(pattern) {
            out[v] = a as i64;
        }
        for (&v, &c) in self.axis.vars().iter().zip(local) {
            out[v] = c;
        }
        FineDegree(out)
    }

    pub fn report(&self, index: usize) -> LcReport {
        let mut per_fiber = Vec::new();
        for (class, scan) in &self.fibers {
            let lambda = class.fiber.lcm_box();
            let mut total = 0;
            let mut witness = None;
            for (c, dims) in scan {
                let d = dims[index];
                if d == 0 {
                    continue;
                }
                let boundary = c.iter().zip(&lambda).any(|(&e, &l)| e < 0 || e == l as i64);
                if boundary {
                    witness.get_or_insert_with(|| self.full_degree(class.pattern(), c));
                } else {
                    total += d;
                }
            }
            let finite_length = witness.is_none();
            per_fiber.push(FiberLc {
                pattern: class.pattern().to_vec(),
                multiplicity: class.patterns.len(),
                infinite_family: class.infinite_family,
                finite_length,
                total_dim: if finite_length { Dim::Finite(total) } else { Dim::Infinite },
                witness_degree: witness,
            });
        }
        let finitely_generated = per_fiber.iter().all(|f| f.finite_length);
        let unbounded = per_fiber
            .iter()
            .any(|f| !f.total_dim.is_zero() && (!f.finite_length || f.infinite_family));
        let total_dim = if unbounded {
            Dim::Infinite
        } else {
            Dim::Finite(
                per_fiber
                    .iter()
                    .map(|f| f.multiplicity * f.total_dim.finite().unwrap())
                    .sum(),
            )
        };
        LcReport {
            index,
            axis: self.axis.clone(),
            per_fiber,
            finitely_generated,
            total_dim,
        }
    }
}

fn check_index(index: usize, axis: &AxisIdeal) -> Result<()> {
    if index > axis.len() {
        return Err(Error::BadIndex { index, max: axis.len() });
    }
    Ok(())
}

/// `H^i_Z(S/I)` fiber by fiber.
pub fn lc_report(ideal: &MonomialIdeal, axis: &AxisIdeal, index: usize) -> Result<LcReport> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    check_index(index, axis)?;
    Ok(CohomologyTable::new(&Subquotient::cyclic(ideal.clone()), axis)?.report(index))
}

/// `H^i_Z(S/I)` finitely generated for every `i < cd(Z, S/I)`.
pub fn generalized_cm(ideal: &MonomialIdeal, axis: &AxisIdeal) -> Result<bool> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let module = Subquotient::cyclic(ideal.clone());
    let top = cd(&module, axis)?;
    let table = CohomologyTable::new(&module, axis)?;
    Ok((0..top).all(|i| table.report(i).finitely_generated))
}

/// Cumulative `dim_K H^i_Z(S/I)` over growing boxes, computed directly on S/I
/// without the fiber decomposition. The box of radius `r` takes axis
/// coordinates in `[-r, r]` and complementary coordinates in
/// `[0, min(r, cap)]`, so it sees each capped fiber once. Strict growth
/// witnesses an infinite-length fiber; a constant tail is only consistent with
/// finite generation.
pub fn growth_scan(ideal: &MonomialIdeal, axis: &AxisIdeal, index: usize, radii: &[u32]) -> Result<Vec<usize>> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    check_index(index, axis)?;
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::PreconditionFailed("radii must be strictly increasing".into()));
    }
    Ok(growth_table(ideal, axis, radii)
        .into_iter()
        .map(|dims| dims[index])
        .collect())
}

/// `growth_scan` for every index at once: entry `k` holds the box sums of
/// `dim H^i` for `i = 0..=|Z|` at `radii[k]`.
pub(crate) fn growth_table(ideal: &MonomialIdeal, axis: &AxisIdeal, radii: &[u32]) -> Vec<Vec<usize>> {
    let module = Subquotient::cyclic(ideal.clone());
    let lambda = module.lcm_box();
    radii
        .iter()
        .map(|&r| {
            let ranges: Vec<(i64, i64)> = lambda
                .iter()
                .enumerate()
                .map(|(v, &l)| {
                    if axis.contains(v) {
                        (-(r as i64), r as i64)
                    } else {
                        (0, r.min(l) as i64)
                    }
                })
                .collect();
            degrees_in(&ranges)
                .par_iter()
                .map(|c| cech_dims(&module, axis, c))
                .reduce(
                    || vec![0; axis.len() + 1],
                    |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
                )
        })
        .collect()
}

fn degrees_in(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &(lo, hi) in ranges {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorollaryTriple {
    pub max_depth: bool,
    pub seq_cm: bool,
    pub cm_wrt_axis: bool,
}

/// For generalized Cohen–Macaulay S/I with positive grade: maximal depth,
/// sequential CM and CM with respect to the axis, which must all agree.
pub fn corollary_check(ideal: &MonomialIdeal, axis: &AxisIdeal) -> Result<CorollaryTriple> {
    if !generalized_cm(ideal, axis)? {
        return Err(Error::PreconditionFailed("S/I is not generalized Cohen-Macaulay".into()));
    }
    let report = analyze(ideal, axis)?;
    if report.grade == 0 {
        return Err(Error::PreconditionFailed("grade is 0".into()));
    }
    // S itself has the one-step filtration 0 ⊊ S
    let seq_cm = if ideal.is_zero() {
        report.cm_wrt_axis
    } else {
        sequentially_cm(ideal, axis)?.verdict
    };
    let triple = CorollaryTriple {
        max_depth: report.maximal_depth,
        seq_cm,
        cm_wrt_axis: report.cm_wrt_axis,
    };
    if !(triple.max_depth == triple.seq_cm && triple.seq_cm == triple.cm_wrt_axis) {
        return Err(Error::Inconsistency(format!("equivalence fails: {triple:?}")));
    }
    Ok(triple)
}

/// Indices `j > 0` equal to `cd(Z, S/p)` for some associated prime `p` while
/// `H^j_Z(S/I)` is finitely generated: instances where the expected
/// non-finite-generation fails.
pub fn question_probe(ideal: &MonomialIdeal, axis: &AxisIdeal) -> Result<Vec<usize>> {
    let table = CohomologyTable::new(&Subquotient::cyclic(ideal.clone()), axis)?;
    let mut js: Vec<usize> = ideal
        .associated_primes()?
        .iter()
        .map(|p| cd_prime(p, axis))
        .filter(|&j| j > 0)
        .collect();
    js.sort_unstable();
    js.dedup();
    Ok(js.into_iter().filter(|&j| table.report(j).finitely_generated).collect())
}
