//! Fine-degree pieces of Koszul and Čech complexes of monomial subquotients.
//!
//! For `N = J/J′` every fine-graded piece `N_c` is spanned by the monomial
//! `x^c` when `x^c ∈ J ∖ J′` and is zero otherwise, and multiplication by a
//! variable maps basis monomial to basis monomial or to zero. In a fixed
//! degree both complexes therefore have 0- or 1-dimensional terms joined by
//! ±1 maps, and homology is rank-nullity on tiny integer matrices.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::linalg;
use crate::ring::{MonomialIdeal, PrimeSupport, RingSpec};

/// The module `top / bottom` for monomial ideals `bottom ⊆ top`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subquotient {
    top: MonomialIdeal,
    bottom: MonomialIdeal,
}

impl Subquotient {
    pub fn new(top: MonomialIdeal, bottom: MonomialIdeal) -> Result<Self> {
        if top.ring() != bottom.ring() {
            return Err(Error::RingMismatch);
        }
        if !bottom.is_subset(&top) {
            return Err(Error::NotSubmodule);
        }
        Ok(Subquotient { top, bottom })
    }

    /// `S/I`, encoded as the pair `(S, I)`.
    pub fn cyclic(ideal: MonomialIdeal) -> Self {
        Subquotient {
            top: MonomialIdeal::unit(*ideal.ring()),
            bottom: ideal,
        }
    }

    pub fn ring(&self) -> &RingSpec {
        self.top.ring()
    }

    pub fn top(&self) -> &MonomialIdeal {
        &self.top
    }

    pub fn bottom(&self) -> &MonomialIdeal {
        &self.bottom
    }

    pub fn is_zero(&self) -> bool {
        self.top.is_subset(&self.bottom)
    }

    /// Componentwise maximum exponent over the generators of both ideals.
    pub fn lcm_box(&self) -> Vec<u32> {
        self.top
            .lcm_box()
            .into_iter()
            .zip(self.bottom.lcm_box())
            .map(|(a, b)| a.max(b))
            .collect()
    }

    pub(crate) fn present(&self, exps: &[u32]) -> bool {
        self.top.contains_exps(exps) && !self.bottom.contains_exps(exps)
    }

    /// Dimension (0 or 1) of the piece in fine degree `c`.
    pub fn fine_piece(&self, c: &[u32]) -> Result<usize> {
        self.check_len(c.len())?;
        Ok(self.present(c) as usize)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.ring().nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring().nvars(),
                found: len,
            });
        }
        Ok(())
    }

    /// `ann(J/J′) = (J′ : J)`.
    pub fn annihilator(&self) -> MonomialIdeal {
        self.bottom
            .colon_ideal(&self.top)
            .expect("both ideals share a ring")
    }

    /// Krull dimension, `dim S/(J′ : J)`.
    pub fn dim(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroModule);
        }
        self.annihilator().dim_quotient()
    }

    /// Associated primes, as the prime annihilators `(J′ : u)` of monomials
    /// `u ∈ J ∖ J′`. Both conditions depend only on `u` capped at the lcm box.
    pub fn associated_primes(&self) -> Result<BTreeSet<PrimeSupport>> {
        if self.is_zero() {
            return Err(Error::ZeroModule);
        }
        let lambda = self.lcm_box();
        let mut out = BTreeSet::new();
        for u in box_points(&lambda) {
            if !self.present(&u) {
                continue;
            }
            let ann = self.bottom.colon_exps(&u);
            if ann.gens().iter().all(|g| g.degree() == 1) {
                out.insert(PrimeSupport::new(ann.gens().iter().flat_map(|g| g.support().collect::<Vec<_>>())));
            }
        }
        Ok(out)
    }
}

/// An ideal generated by a nonempty set of variables: P, Q or 𝔪 = P+Q, or any
/// other subset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AxisIdeal {
    vars: Vec<usize>,
}

impl AxisIdeal {
    pub fn new(ring: &RingSpec, vars: impl IntoIterator<Item = usize>) -> Result<Self> {
        let vars: BTreeSet<usize> = vars.into_iter().collect();
        if vars.is_empty() {
            return Err(Error::BadAxis("no variables".into()));
        }
        if let Some(v) = vars.iter().find(|&&v| v >= ring.nvars()) {
            return Err(Error::BadAxis(format!("variable index {v} outside the ring")));
        }
        Ok(AxisIdeal {
            vars: vars.into_iter().collect(),
        })
    }

    /// P = (x_1..x_m).
    pub fn x_block(ring: &RingSpec) -> Result<Self> {
        Self::new(ring, ring.x_vars()).map_err(|_| Error::BadAxis("ring has no x-variables".into()))
    }

    /// Q = (y_1..y_n).
    pub fn y_block(ring: &RingSpec) -> Result<Self> {
        Self::new(ring, ring.y_vars()).map_err(|_| Error::BadAxis("ring has no y-variables".into()))
    }

    /// 𝔪 = P + Q.
    pub fn all(ring: &RingSpec) -> Self {
        AxisIdeal {
            vars: (0..ring.nvars()).collect(),
        }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn contains(&self, var: usize) -> bool {
        self.vars.binary_search(&var).is_ok()
    }

    pub fn complement(&self, ring: &RingSpec) -> Vec<usize> {
        (0..ring.nvars()).filter(|v| !self.contains(*v)).collect()
    }

    pub fn is_all(&self, ring: &RingSpec) -> bool {
        self.vars.len() == ring.nvars()
    }

    /// The complementary axis ideal, if any variables remain.
    pub fn complement_axis(&self, ring: &RingSpec) -> Option<AxisIdeal> {
        let rest = self.complement(ring);
        (!rest.is_empty()).then_some(AxisIdeal { vars: rest })
    }

    fn check(&self, ring: &RingSpec) -> Result<()> {
        match self.vars.last() {
            Some(&v) if v < ring.nvars() => Ok(()),
            _ => Err(Error::BadAxis("axis does not fit the ring".into())),
        }
    }
}

/// A degree in the fine Z^{m+n} grading.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FineDegree(pub Vec<i64>);

impl FineDegree {
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for FineDegree {
    fn from(v: Vec<i64>) -> Self {
        FineDegree(v)
    }
}

/// All points of the box `∏ [0, bound_i]`, in lexicographic order.
pub(crate) fn box_points(bound: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=b).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out
}

/// Sign of inserting position `p` into the sorted subset `mask`.
fn sign(mask: u64, p: usize) -> i64 {
    if (mask & ((1u64 << p) - 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Homology dimensions of a complex whose degree-`k` terms are the subsets
/// of size `k` in `present`, with differential adding (Čech) or removing
/// (Koszul) one element. Both directions share one incidence matrix up to
/// transpose, so the ranks agree. Returns `dim H` for every `k`.
fn subset_complex_homology(k_max: usize, present: &[u64], ring: &RingSpec) -> Vec<usize> {
    let mut by_size: Vec<Vec<u64>> = vec![vec![]; k_max + 1];
    for &mask in present {
        by_size[mask.count_ones() as usize].push(mask);
    }
    // rank of the map between sizes k and k+1 (either direction)
    let ranks: Vec<usize> = (0..k_max)
        .map(|k| {
            let small = &by_size[k];
            let large = &by_size[k + 1];
            if small.is_empty() || large.is_empty() {
                return 0;
            }
            let index: BTreeMap<u64, usize> = small.iter().enumerate().map(|(i, &m)| (m, i)).collect();
            let mut rows = vec![vec![0i64; small.len()]; large.len()];
            for (r, &big) in large.iter().enumerate() {
                for p in 0..k_max {
                    if big & (1 << p) == 0 {
                        continue;
                    }
                    let s = big & !(1 << p);
                    if let Some(&c) = index.get(&s) {
                        rows[r][c] = sign(s, p);
                    }
                }
            }
            linalg::rank(&rows, ring.characteristic())
        })
        .collect();
    (0..=k_max)
        .map(|k| {
            let below = if k > 0 { ranks[k - 1] } else { 0 };
            let above = if k < k_max { ranks[k] } else { 0 };
            by_size[k].len() - below - above
        })
        .collect()
}

/// `dim_K H_j(Z; N)_b` for every `j = 0..=|Z|`.
pub fn koszul_homology_dims(module: &Subquotient, axis: &AxisIdeal, b: &[u32]) -> Vec<usize> {
    let k = axis.len();
    let present: Vec<u64> = (0..1u64 << k)
        .filter(|&mask| {
            let mut exps = b.to_vec();
            for (p, &v) in axis.vars().iter().enumerate() {
                if mask & (1 << p) != 0 {
                    if exps[v] == 0 {
                        return false;
                    }
                    exps[v] -= 1;
                }
            }
            module.present(&exps)
        })
        .collect();
    subset_complex_homology(k, &present, module.ring())
}

/// `dim_K H_j(Z; N)_b`: homology of the Koszul complex on the variables of
/// `Z` with coefficients in `N`, in fine degree `b`.
pub fn koszul_homology_dim(module: &Subquotient, axis: &AxisIdeal, j: usize, b: &[u32]) -> Result<usize> {
    axis.check(module.ring())?;
    module.check_len(b.len())?;
    if j > axis.len() {
        return Err(Error::BadIndex { index: j, max: axis.len() });
    }
    Ok(koszul_homology_dims(module, axis, b)[j])
}

/// `dim_K H^i_Z(N)_c` for every `i = 0..=|Z|`, from the Čech complex on the
/// variables of `Z`.
///
/// The σ-term in degree `c` is the localization `N_{x_σ}` in degree `c`. It
/// is nonzero iff σ contains every coordinate where `c` is negative and the
/// monomial `x^{c + t e_σ}` lies in `J ∖ J′` for large `t`; membership is
/// stable once the σ-coordinates reach the lcm box, so they are evaluated
/// there.
pub fn cech_dims(module: &Subquotient, axis: &AxisIdeal, c: &[i64]) -> Vec<usize> {
    let k = axis.len();
    let ring = module.ring();
    if (0..ring.nvars()).any(|v| !axis.contains(v) && c[v] < 0) {
        return vec![0; k + 1];
    }
    let lambda = module.lcm_box();
    let negative: u64 = axis
        .vars()
        .iter()
        .enumerate()
        .filter(|(_, &v)| c[v] < 0)
        .fold(0, |acc, (p, _)| acc | 1 << p);
    let present: Vec<u64> = (0..1u64 << k)
        .filter(|&mask| mask & negative == negative)
        .filter(|&mask| {
            let mut exps: Vec<u32> = c.iter().map(|&e| e.max(0) as u32).collect();
            for (p, &v) in axis.vars().iter().enumerate() {
                if mask & (1 << p) != 0 {
                    exps[v] = exps[v].max(lambda[v]);
                }
            }
            module.present(&exps)
        })
        .collect();
    subset_complex_homology(k, &present, ring)
}

/// `dim_K H^i_Z(N)` in fine degree `c`. Coordinates off `Z` must be
/// nonnegative for a nonzero answer.
pub fn cech_piece_dim(module: &Subquotient, axis: &AxisIdeal, i: usize, c: &FineDegree) -> Result<usize> {
    axis.check(module.ring())?;
    module.check_len(c.0.len())?;
    if i > axis.len() {
        return Err(Error::BadIndex { index: i, max: axis.len() });
    }
    Ok(cech_dims(module, axis, c.as_slice())[i])
}

/// Representative degree classes for the Čech scan: coordinates on `Z` range
/// over `{-1} ∪ [0, λ_z]`, the rest over `[0, λ_v]`. Every degree has the same
/// piece dimensions as exactly one representative (negative values collapse
/// to -1, values beyond the box collapse onto it).
pub fn cech_classes(module: &Subquotient, axis: &AxisIdeal) -> Vec<Vec<i64>> {
    let lambda = module.lcm_box();
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for (v, &l) in lambda.iter().enumerate() {
        let lo = if axis.contains(v) { -1 } else { 0 };
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=l as i64).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out
}

/// Nonzero Čech pieces over all representative classes.
pub fn cech_scan(module: &Subquotient, axis: &AxisIdeal) -> Vec<(Vec<i64>, Vec<usize>)> {
    cech_classes(module, axis)
        .into_iter()
        .map(|c| {
            let dims = cech_dims(module, axis, &c);
            (c, dims)
        })
        .filter(|(_, dims)| dims.iter().any(|&d| d > 0))
        .collect()
}

/// `(min, max)` of the indices with `H^i_Z(N) ≠ 0`, or `None` when all vanish.
pub fn cech_range(module: &Subquotient, axis: &AxisIdeal) -> Option<(usize, usize)> {
    let mut lo = usize::MAX;
    let mut hi = 0;
    for (_, dims) in cech_scan(module, axis) {
        for (i, &d) in dims.iter().enumerate() {
            if d > 0 {
                lo = lo.min(i);
                hi = hi.max(i);
            }
        }
    }
    (lo != usize::MAX).then_some((lo, hi))
}

/// Koszul homology table over the certified scan box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    /// Nonzero `β_{j,b}`; coordinates off the axis are capped at the lcm box.
    pub entries: BTreeMap<(usize, Vec<u32>), usize>,
    /// Largest `j` with some nonzero `β_{j,b}`. For `Z` = all variables this
    /// is the projective dimension.
    pub projdim: usize,
    /// The box that passed shell certification.
    pub scan_box: Vec<u32>,
}

/// Koszul homology `β_{j,b} = dim H_j(Z; N)_b` over the lcm box, certified by
/// checking that the shell one step outside the box vanishes on `Z`. A
/// violating coordinate has its bound doubled and the scan repeats.
pub fn betti_and_projdim(module: &Subquotient, axis: &AxisIdeal) -> Result<BettiTable> {
    axis.check(module.ring())?;
    if module.is_zero() {
        return Err(Error::ZeroModule);
    }
    let lambda = module.lcm_box();
    let mut bound = lambda.clone();
    loop {
        let mut enlarged = bound.clone();
        for &v in axis.vars() {
            enlarged[v] += 1;
        }
        let mut entries = BTreeMap::new();
        let mut violations: BTreeSet<usize> = BTreeSet::new();
        for b in box_points(&enlarged) {
            let outside: Vec<usize> = axis.vars().iter().copied().filter(|&v| b[v] > bound[v]).collect();
            let dims = koszul_homology_dims(module, axis, &b);
            if outside.is_empty() {
                for (j, &d) in dims.iter().enumerate() {
                    if d > 0 {
                        entries.insert((j, b.clone()), d);
                    }
                }
            } else if dims.iter().any(|&d| d > 0) {
                violations.extend(outside);
            }
        }
        if violations.is_empty() {
            let projdim = entries.keys().map(|(j, _)| *j).max().unwrap_or(0);
            return Ok(BettiTable {
                entries,
                projdim,
                scan_box: bound,
            });
        }
        for v in violations {
            bound[v] = 2 * bound[v] + 1;
        }
    }
}

/// `depth` of `N` with respect to `Z`, as `|Z| − max{j : H_j(Z; N) ≠ 0}`,
/// checked against `min{i : H^i_Z(N) ≠ 0}` from the Čech scan.
pub fn depth_module(module: &Subquotient, axis: &AxisIdeal) -> Result<usize> {
    let table = betti_and_projdim(module, axis)?;
    let koszul = axis.len() - table.projdim;
    let cech = cech_range(module, axis).map(|(lo, _)| lo);
    if cech != Some(koszul) {
        return Err(Error::Inconsistency(format!(
            "Koszul depth {koszul} but Čech depth {cech:?}"
        )));
    }
    Ok(koszul)
}

/// Krull dimension of `N`.
pub fn dim_module(module: &Subquotient) -> Result<usize> {
    module.dim()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(m: usize, n: usize) -> RingSpec {
        RingSpec::new(m, n).unwrap()
    }

    fn ideal(r: RingSpec, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exps(r, gens).unwrap()
    }

    fn cyclic(r: RingSpec, gens: &[&[u32]]) -> Subquotient {
        Subquotient::cyclic(ideal(r, gens))
    }

    #[test]
    fn subquotient_validation() {
        let r = ring(1, 1);
        let err = Subquotient::new(ideal(r, &[&[1, 1]]), ideal(r, &[&[1, 0]])).unwrap_err();
        assert_eq!(err, Error::NotSubmodule);
        let err = Subquotient::new(ideal(r, &[&[1, 0]]), ideal(ring(2, 1), &[])).unwrap_err();
        assert_eq!(err, Error::RingMismatch);
    }

    #[test]
    fn fine_piece_examples() {
        let r = ring(1, 1);
        let n = cyclic(r, &[&[1, 1]]);
        assert_eq!(n.fine_piece(&[1, 1]).unwrap(), 0);
        assert_eq!(n.fine_piece(&[1, 0]).unwrap(), 1);
        let n = Subquotient::new(ideal(r, &[&[1, 0]]), ideal(r, &[&[1, 1]])).unwrap();
        assert_eq!(n.fine_piece(&[1, 2]).unwrap(), 0);
        assert_eq!(n.fine_piece(&[1, 0]).unwrap(), 1);
        assert_eq!(n.fine_piece(&[0, 0]).unwrap(), 0);
    }

    #[test]
    fn koszul_examples() {
        let r = ring(0, 1);
        let n = cyclic(r, &[&[1]]);
        let z = AxisIdeal::all(&r);
        assert_eq!(koszul_homology_dim(&n, &z, 1, &[1]).unwrap(), 1);

        let r = ring(0, 2);
        let z = AxisIdeal::all(&r);
        let free = Subquotient::cyclic(MonomialIdeal::zero(r));
        for b in box_points(&[3, 3]) {
            for j in 1..=2 {
                assert_eq!(koszul_homology_dim(&free, &z, j, &b).unwrap(), 0);
            }
        }
        let hyp = cyclic(r, &[&[1, 1]]);
        assert_eq!(koszul_homology_dim(&hyp, &z, 1, &[1, 1]).unwrap(), 1);
        assert_eq!(koszul_homology_dim(&hyp, &z, 3, &[1, 1]), Err(Error::BadIndex { index: 3, max: 2 }));
    }

    #[test]
    fn betti_and_depth_examples() {
        let r = ring(0, 1);
        let t = betti_and_projdim(&cyclic(r, &[&[1]]), &AxisIdeal::all(&r)).unwrap();
        assert_eq!(t.projdim, 1);
        assert_eq!(t.entries.get(&(1, vec![1])), Some(&1));

        let r = ring(0, 2);
        let z = AxisIdeal::all(&r);
        let max_ideal = cyclic(r, &[&[1, 0], &[0, 1]]);
        assert_eq!(betti_and_projdim(&max_ideal, &z).unwrap().projdim, 2);
        assert_eq!(depth_module(&max_ideal, &z).unwrap(), 0);
        let hyp = cyclic(r, &[&[1, 1]]);
        assert_eq!(betti_and_projdim(&hyp, &z).unwrap().projdim, 1);
        assert_eq!(depth_module(&hyp, &z).unwrap(), 1);
        assert_eq!(depth_module(&Subquotient::cyclic(MonomialIdeal::zero(r)), &z).unwrap(), 2);

        let zero = cyclic(r, &[&[0, 0]]);
        assert_eq!(betti_and_projdim(&zero, &z), Err(Error::ZeroModule));
    }

    #[test]
    fn dim_examples() {
        let r = ring(1, 1);
        assert_eq!(dim_module(&Subquotient::cyclic(MonomialIdeal::zero(r))).unwrap(), 2);
        let n = Subquotient::new(ideal(r, &[&[1, 0]]), ideal(r, &[&[1, 1]])).unwrap();
        assert_eq!(n.annihilator(), ideal(r, &[&[0, 1]]));
        assert_eq!(dim_module(&n).unwrap(), 1);
        let r = ring(2, 2);
        let i = MonomialIdeal::from_vars(r, [0, 2])
            .intersect(&MonomialIdeal::from_vars(r, [1, 3]))
            .unwrap();
        assert_eq!(dim_module(&Subquotient::cyclic(i)).unwrap(), 2);
    }

    #[test]
    fn cech_of_finite_length_module() {
        // K = K[y1,y2]/(y1,y2): H^0 = K in degree 0
        let r = ring(0, 2);
        let n = cyclic(r, &[&[1, 0], &[0, 1]]);
        let z = AxisIdeal::all(&r);
        assert_eq!(cech_piece_dim(&n, &z, 0, &vec![0, 0].into()).unwrap(), 1);
        assert_eq!(cech_scan(&n, &z), vec![(vec![0, 0], vec![1, 0, 0])]);
    }

    #[test]
    fn cech_of_polynomial_ring_is_top_only() {
        let r = ring(0, 2);
        let n = Subquotient::cyclic(MonomialIdeal::zero(r));
        let z = AxisIdeal::all(&r);
        assert_eq!(cech_dims(&n, &z, &[-1, -1]), vec![0, 0, 1]);
        assert_eq!(cech_dims(&n, &z, &[-5, -2]), vec![0, 0, 1]);
        assert_eq!(cech_dims(&n, &z, &[0, -1]), vec![0, 0, 0]);
        assert_eq!(cech_range(&n, &z), Some((2, 2)));
    }

    #[test]
    fn associated_primes_by_annihilators() {
        let r = ring(2, 4);
        let i = ideal(
            r,
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
        );
        let n = Subquotient::cyclic(i.clone());
        assert_eq!(n.associated_primes().unwrap(), i.associated_primes().unwrap());
    }
}
