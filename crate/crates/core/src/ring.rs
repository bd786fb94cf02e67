//! Monomial ideals in S = K[x_1..x_m, y_1..y_n] and their decompositions.
//!
//! Variables are numbered `0..m+n`: the x-block first, then the y-block.
//! Every ideal is stored by its minimal generators, sorted in descending
//! lexicographic order of exponent vectors, so equal ideals compare equal.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// Characteristic of the field used for homology ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Characteristic {
    #[default]
    Zero,
    Prime(u64),
}

impl Characteristic {
    pub fn new(value: u64) -> Result<Self> {
        match value {
            0 => Ok(Characteristic::Zero),
            p if is_prime(p) => Ok(Characteristic::Prime(p)),
            p => Err(Error::BadRingSpec(format!("characteristic {p} is not 0 or a prime"))),
        }
    }

    pub fn value(self) -> u64 {
        match self {
            Characteristic::Zero => 0,
            Characteristic::Prime(p) => p,
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// The ambient ring: `m` x-variables, `n` y-variables and the rank characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingSpec {
    m: usize,
    n: usize,
    characteristic: Characteristic,
}

impl RingSpec {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        Self::with_characteristic(m, n, Characteristic::Zero)
    }

    pub fn with_characteristic(m: usize, n: usize, characteristic: Characteristic) -> Result<Self> {
        if m + n == 0 {
            return Err(Error::BadRingSpec("ring needs at least one variable".into()));
        }
        if m + n > 64 {
            return Err(Error::BadRingSpec("at most 64 variables are supported".into()));
        }
        Ok(RingSpec { m, n, characteristic })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn characteristic(&self) -> Characteristic {
        self.characteristic
    }

    pub fn nvars(&self) -> usize {
        self.m + self.n
    }

    pub fn is_x(&self, var: usize) -> bool {
        var < self.m
    }

    pub fn x_vars(&self) -> std::ops::Range<usize> {
        0..self.m
    }

    pub fn y_vars(&self) -> std::ops::Range<usize> {
        self.m..self.m + self.n
    }

    pub fn var_name(&self, var: usize) -> String {
        if var < self.m {
            format!("x{}", var + 1)
        } else {
            format!("y{}", var - self.m + 1)
        }
    }
}

/// A monomial, i.e. its exponent vector in N^{m+n}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, var: usize, exp: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = exp;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        divides(&self.exps, &other.exps)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect())
    }

    /// `self / gcd(self, other)`.
    pub fn strip(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a.saturating_sub(*b)).collect())
    }

    pub fn squarefree_part(&self) -> Monomial {
        Monomial::new(self.exps.iter().map(|&e| e.min(1)).collect())
    }

    pub fn render(&self, ring: &RingSpec) -> String {
        if self.is_one() {
            return "1".into();
        }
        self.support()
            .map(|v| match self.exps[v] {
                1 => ring.var_name(v),
                e => format!("{}^{}", ring.var_name(v), e),
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// A monomial prime ideal, given by the variables generating it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PrimeSupport {
    vars: BTreeSet<usize>,
}

impl PrimeSupport {
    pub fn new(vars: impl IntoIterator<Item = usize>) -> Self {
        PrimeSupport {
            vars: vars.into_iter().collect(),
        }
    }

    /// The zero prime.
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vars(&self) -> &BTreeSet<usize> {
        &self.vars
    }

    pub fn height(&self) -> usize {
        self.vars.len()
    }

    pub fn contains(&self, var: usize) -> bool {
        self.vars.contains(&var)
    }

    pub fn is_subset(&self, other: &PrimeSupport) -> bool {
        self.vars.is_subset(&other.vars)
    }

    pub fn union(&self, other: &PrimeSupport) -> PrimeSupport {
        PrimeSupport::new(self.vars.union(&other.vars).copied())
    }

    pub fn to_ideal(&self, ring: RingSpec) -> MonomialIdeal {
        MonomialIdeal::from_minimal(
            ring,
            self.vars.iter().map(|&v| Monomial::var(ring.nvars(), v, 1)).collect(),
        )
    }

    pub fn render(&self, ring: &RingSpec) -> String {
        if self.vars.is_empty() {
            return "(0)".into();
        }
        let names: Vec<_> = self.vars.iter().map(|&v| ring.var_name(v)).collect();
        format!("({})", names.join(","))
    }
}

/// An irreducible or primary component of a decomposition together with its radical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub component: MonomialIdeal,
    pub radical: PrimeSupport,
}

/// A monomial ideal in minimal-generator normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ring: RingSpec,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `raw`, reduced to its minimal generators.
    pub fn new(ring: RingSpec, raw: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let raw: Vec<Monomial> = raw.into_iter().collect();
        if let Some(bad) = raw.iter().find(|u| u.len() != ring.nvars()) {
            return Err(Error::DimensionMismatch {
                expected: ring.nvars(),
                found: bad.len(),
            });
        }
        Ok(Self::from_raw(ring, raw))
    }

    pub fn from_exps(ring: RingSpec, raw: &[&[u32]]) -> Result<Self> {
        Self::new(ring, raw.iter().map(|e| Monomial::new(e.to_vec())))
    }

    pub(crate) fn from_raw(ring: RingSpec, raw: Vec<Monomial>) -> Self {
        MonomialIdeal {
            ring,
            gens: minimalize(raw),
        }
    }

    /// Caller guarantees `gens` is already minimal.
    pub(crate) fn from_minimal(ring: RingSpec, mut gens: Vec<Monomial>) -> Self {
        gens.sort_by(|a, b| b.cmp(a));
        MonomialIdeal { ring, gens }
    }

    pub fn zero(ring: RingSpec) -> Self {
        MonomialIdeal { ring, gens: vec![] }
    }

    pub fn unit(ring: RingSpec) -> Self {
        MonomialIdeal {
            ring,
            gens: vec![Monomial::one(ring.nvars())],
        }
    }

    /// The ideal generated by the given variables.
    pub fn from_vars(ring: RingSpec, vars: impl IntoIterator<Item = usize>) -> Self {
        PrimeSupport::new(vars).to_ideal(ring)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.exps.iter().all(|&e| e <= 1))
    }

    pub fn contains(&self, u: &Monomial) -> bool {
        self.contains_exps(&u.exps)
    }

    pub(crate) fn contains_exps(&self, exps: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(&g.exps, exps))
    }

    pub fn is_subset(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// Componentwise maximum of the generator exponents.
    pub fn lcm_box(&self) -> Vec<u32> {
        let mut out = vec![0; self.ring.nvars()];
        for g in &self.gens {
            for (o, &e) in out.iter_mut().zip(&g.exps) {
                *o = (*o).max(e);
            }
        }
        out
    }

    fn check_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    fn check_monomial(&self, u: &Monomial) -> Result<()> {
        if u.len() != self.ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.nvars(),
                found: u.len(),
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ring(other)?;
        let raw = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(Self::from_raw(self.ring, raw))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ring(other)?;
        let raw = self
            .gens
            .iter()
            .flat_map(|u| other.gens.iter().map(move |v| u.mul(v)))
            .collect();
        Ok(Self::from_raw(self.ring, raw))
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ring(other)?;
        let raw = self
            .gens
            .iter()
            .flat_map(|u| other.gens.iter().map(move |v| u.lcm(v)))
            .collect();
        Ok(Self::from_raw(self.ring, raw))
    }

    /// `(I : u) = { v : v·u ∈ I }`.
    pub fn colon(&self, u: &Monomial) -> Result<MonomialIdeal> {
        self.check_monomial(u)?;
        Ok(self.colon_exps(&u.exps))
    }

    pub(crate) fn colon_exps(&self, u: &[u32]) -> MonomialIdeal {
        let raw = self
            .gens
            .iter()
            .map(|g| Monomial::new(g.exps.iter().zip(u).map(|(a, b)| a.saturating_sub(*b)).collect()))
            .collect();
        Self::from_raw(self.ring, raw)
    }

    /// `(I : J) = ⋂_{g ∈ gens J} (I : g)`; the unit ideal when `J` is zero.
    pub fn colon_ideal(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ring(other)?;
        let mut acc = MonomialIdeal::unit(self.ring);
        for g in &other.gens {
            acc = acc.intersect(&self.colon_exps(&g.exps))?;
        }
        Ok(acc)
    }

    /// `I ∩ K[vars]`: the generators supported on `vars`.
    pub fn restrict_to(&self, vars: &[usize]) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .filter(|g| g.support().all(|v| vars.contains(&v)))
            .cloned()
            .collect();
        MonomialIdeal { ring: self.ring, gens }
    }

    pub fn radical(&self) -> MonomialIdeal {
        Self::from_raw(self.ring, self.gens.iter().map(Monomial::squarefree_part).collect())
    }

    /// Irredundant decomposition into irreducible ideals (generated by pure powers).
    ///
    /// A generator `u` with at least two variables splits as `u = u1·u2`,
    /// `u1` the power of its first variable, and `I = (I + (u1)) ∩ (I + (u2))`.
    /// Leaves are irreducible; any leaf containing another one is dropped.
    pub fn irreducible_decomposition(&self) -> Result<Vec<PrimaryComponent>> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let nvars = self.ring.nvars();
        let mut leaves: BTreeSet<Vec<u32>> = BTreeSet::new();
        let mut seen: HashSet<Vec<Monomial>> = HashSet::new();
        let mut stack = vec![self.gens.clone()];
        while let Some(gens) = stack.pop() {
            if !seen.insert(gens.clone()) {
                continue;
            }
            let split = gens.iter().find(|g| g.support().nth(1).is_some());
            match split {
                None => {
                    // pure powers: record exponent per variable
                    let mut leaf = vec![0u32; nvars];
                    for g in &gens {
                        let v = g.support().next().expect("proper ideal has no unit generator");
                        leaf[v] = g.exps[v];
                    }
                    leaves.insert(leaf);
                }
                Some(u) => {
                    let first = u.support().next().unwrap();
                    let u1 = Monomial::var(nvars, first, u.exps[first]);
                    let mut u2 = u.clone();
                    u2.exps[first] = 0;
                    for piece in [u1, u2] {
                        let mut next = gens.clone();
                        next.push(piece);
                        stack.push(minimalize(next));
                    }
                }
            }
        }
        let leaves: Vec<Vec<u32>> = leaves.into_iter().collect();
        let contains = |big: &[u32], small: &[u32]| {
            // ideal(small) ⊆ ideal(big) for irreducible ideals
            small
                .iter()
                .zip(big)
                .all(|(&s, &b)| s == 0 || (b > 0 && b <= s))
        };
        let kept: Vec<&Vec<u32>> = leaves
            .iter()
            .filter(|c| !leaves.iter().any(|d| d != *c && contains(c, d)))
            .collect();
        let mut out: Vec<PrimaryComponent> = kept
            .into_iter()
            .map(|leaf| {
                let gens = leaf
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(v, &e)| Monomial::var(nvars, v, e))
                    .collect();
                PrimaryComponent {
                    component: MonomialIdeal::from_minimal(self.ring, gens),
                    radical: PrimeSupport::new(leaf.iter().enumerate().filter(|(_, &e)| e > 0).map(|(v, _)| v)),
                }
            })
            .collect();
        out.sort_by(|a, b| a.radical.cmp(&b.radical).then_with(|| a.component.gens.cmp(&b.component.gens)));
        Ok(out)
    }

    /// Irredundant primary decomposition: irreducible components grouped by radical.
    pub fn primary_decomposition(&self) -> Result<Vec<PrimaryComponent>> {
        let mut groups: BTreeMap<PrimeSupport, MonomialIdeal> = BTreeMap::new();
        for c in self.irreducible_decomposition()? {
            match groups.get_mut(&c.radical) {
                Some(acc) => *acc = acc.intersect(&c.component)?,
                None => {
                    groups.insert(c.radical, c.component);
                }
            }
        }
        Ok(groups
            .into_iter()
            .map(|(radical, component)| PrimaryComponent { component, radical })
            .collect())
    }

    /// Associated primes of S/I; `{(0)}` for the zero ideal.
    pub fn associated_primes(&self) -> Result<BTreeSet<PrimeSupport>> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        if self.is_zero() {
            return Ok(BTreeSet::from([PrimeSupport::zero()]));
        }
        Ok(self.irreducible_decomposition()?.into_iter().map(|c| c.radical).collect())
    }

    pub fn minimal_primes(&self) -> Result<BTreeSet<PrimeSupport>> {
        let ass = self.associated_primes()?;
        Ok(ass
            .iter()
            .filter(|p| !ass.iter().any(|q| q != *p && q.is_subset(p)))
            .cloned()
            .collect())
    }

    /// Krull dimension of S/I.
    pub fn dim_quotient(&self) -> Result<usize> {
        let min_height = self
            .minimal_primes()?
            .iter()
            .map(PrimeSupport::height)
            .min()
            .unwrap_or(0);
        Ok(self.ring.nvars() - min_height)
    }

    pub fn render(&self) -> String {
        let terms: Vec<_> = self.gens.iter().map(|g| g.render(&self.ring)).collect();
        format!("({})", terms.join(", "))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "{}", self.render())
    }
}

/// Minimal generating set, deduplicated and sorted descending lexicographically.
pub(crate) fn minimalize(mut raw: Vec<Monomial>) -> Vec<Monomial> {
    raw.sort_by_key(|u| u.degree());
    raw.dedup_by(|a, b| a == b);
    let mut kept: Vec<Monomial> = Vec::with_capacity(raw.len());
    for u in raw {
        if !kept.iter().any(|g| g.divides(&u)) {
            kept.push(u);
        }
    }
    kept.sort_by(|a, b| b.cmp(a));
    kept
}
