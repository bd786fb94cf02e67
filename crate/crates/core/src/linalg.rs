//! Exact rank computations for the small 0/±1 boundary matrices produced by
//! Koszul and Čech complexes.
//!
//! The routines are generic over the scalar through `num-traits`: any exact
//! field (`Ratio<i64>`, `BigRational`) works with [`rank_over_field`], any
//! signed integer type with [`rank_fraction_free`]. Prime characteristic goes
//! through [`rank_mod_p`] since the modulus is a runtime value.

use std::fmt::Debug;

use num_integer::Integer;
use num_traits::{Num, Signed};

use crate::ring::Characteristic;
use crate::ExactInt;

/// Scalars that support exact Gaussian elimination with division.
pub trait Field: Num + Clone + PartialEq + Debug {}

impl<T: Num + Clone + PartialEq + Debug> Field for T {}

/// Row-major dense matrix.
pub type Matrix<T> = Vec<Vec<T>>;

/// Rank by Gaussian elimination over a field.
pub fn rank_over_field<F: Field>(mut rows: Matrix<F>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = F::one() / rows[rank][col].clone();
        for c in col..ncols {
            rows[rank][c] = rows[rank][c].clone() * inv.clone();
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..ncols {
                let delta = factor.clone() * rows[rank][c].clone();
                rows[r][c] = rows[r][c].clone() - delta;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank by fraction-free (Bareiss) elimination over the integers.
///
/// Every intermediate entry is a minor of the input, so the division by the
/// previous pivot is exact.
pub fn rank_fraction_free<T>(mut rows: Matrix<T>) -> usize
where
    T: Integer + Signed + Clone + Debug,
{
    let ncols = rows.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            let lead = rows[r][col].clone();
            for c in col..ncols {
                let num = p.clone() * rows[r][c].clone() - lead.clone() * rows[rank][c].clone();
                debug_assert!((num.clone() % prev.clone()).is_zero());
                rows[r][c] = num / prev.clone();
            }
        }
        prev = p;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank over the prime field F_p.
pub fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let p = p as i128;
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| (v as i128).rem_euclid(p)).collect())
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = mod_inverse(m[rank][col], p);
        for c in col..ncols {
            m[rank][c] = m[rank][c] * inv % p;
        }
        for r in 0..m.len() {
            if r == rank || m[r][col] == 0 {
                continue;
            }
            let factor = m[r][col];
            for c in col..ncols {
                m[r][c] = (m[r][c] - factor * m[rank][c]).rem_euclid(p);
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn mod_inverse(a: i128, p: i128) -> i128 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p, a.rem_euclid(p));
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "{a} is not invertible mod {p}");
    t.rem_euclid(p)
}

/// Rank of an integer matrix over the prime field of the given characteristic.
pub fn rank(rows: &[Vec<i64>], characteristic: Characteristic) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    match characteristic {
        Characteristic::Zero => rank_fraction_free::<ExactInt>(rows.to_vec()),
        Characteristic::Prime(p) => rank_mod_p(rows, p),
    }
}
