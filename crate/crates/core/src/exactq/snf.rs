//! Smith normal form over the integers by elementary row/column reduction.
//!
//! Pivot selection is the minimal-absolute-value nonzero entry of the
//! remaining submatrix, with ties broken by lowest (row, col) index, so the
//! reduction is fully deterministic.

use super::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt;

/// Invariant factors `d₁ | d₂ | …` (all positive) and the rank of the
/// matrix. There exist unimodular `U`, `V` with `UMV` diagonal carrying
/// exactly these entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

/// Finitely generated abelian group descriptor: torsion factors in
/// divisibility order (orders > 1 only) plus free rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianGroup {
    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Order of the group if finite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    pub fn is_cyclic_of_order(&self, n: &BigInt) -> bool {
        self.free_rank == 0
            && match self.torsion.as_slice() {
                [] => n == &BigInt::from(1),
                [d] => d == n,
                _ => false,
            }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{}", d)).collect();
        for _ in 0..self.free_rank {
            parts.push("Z".to_string());
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Computes the Smith normal form of `m`.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let mut a = m.clone();
    let rows = a.rows();
    let cols = a.cols();
    let mut factors: Vec<BigInt> = Vec::new();
    let mut k = 0usize;

    while k < rows.min(cols) {
        let Some((pr, pc)) = min_abs_pivot(&a, k) else {
            break;
        };
        swap_rows(&mut a, k, pr);
        swap_cols(&mut a, k, pc);

        loop {
            // clear column k below the pivot
            let mut dirty = false;
            for r in (k + 1)..rows {
                if !a.get(r, k).is_zero() {
                    let q = a.get(r, k).div_floor(a.get(k, k));
                    row_sub(&mut a, r, k, &q);
                    if !a.get(r, k).is_zero() {
                        // remainder became the new, smaller pivot candidate
                        swap_rows(&mut a, k, r);
                        dirty = true;
                    }
                }
            }
            // clear row k to the right of the pivot
            for c in (k + 1)..cols {
                if !a.get(k, c).is_zero() {
                    let q = a.get(k, c).div_floor(a.get(k, k));
                    col_sub(&mut a, c, k, &q);
                    if !a.get(k, c).is_zero() {
                        swap_cols(&mut a, k, c);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // pivot divides the rest of the submatrix, or we fold an
            // offending row in and reduce again
            match find_nondivisible(&a, k) {
                None => break,
                Some((r, _)) => {
                    row_add(&mut a, k, r);
                }
            }
        }

        if a.get(k, k).is_negative() {
            negate_row(&mut a, k);
        }
        factors.push(a.get(k, k).clone());
        k += 1;
    }

    let rank = factors.len();
    SnfResult {
        invariant_factors: factors,
        rank,
    }
}

/// Minimal-|entry| nonzero pivot in the trailing submatrix starting at
/// `(k, k)`; ties resolved by lowest (row, col).
fn min_abs_pivot(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for r in k..a.rows() {
        for c in k..a.cols() {
            let v = a.get(r, c);
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            match &best {
                Some((b, _, _)) if *b <= abs => {}
                _ => best = Some((abs, r, c)),
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

fn find_nondivisible(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let d = a.get(k, k).clone();
    for r in (k + 1)..a.rows() {
        for c in (k + 1)..a.cols() {
            if !a.get(r, c).mod_floor(&d).is_zero() {
                return Some((r, c));
            }
        }
    }
    None
}

fn swap_rows(a: &mut IntMatrix, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    for c in 0..a.cols() {
        let t = a.get(r1, c).clone();
        a.set(r1, c, a.get(r2, c).clone());
        a.set(r2, c, t);
    }
}

fn swap_cols(a: &mut IntMatrix, c1: usize, c2: usize) {
    if c1 == c2 {
        return;
    }
    for r in 0..a.rows() {
        let t = a.get(r, c1).clone();
        a.set(r, c1, a.get(r, c2).clone());
        a.set(r, c2, t);
    }
}

/// row r -= q * row k
fn row_sub(a: &mut IntMatrix, r: usize, k: usize, q: &BigInt) {
    for c in 0..a.cols() {
        let v = a.get(r, c) - q * a.get(k, c);
        a.set(r, c, v);
    }
}

/// col c -= q * col k
fn col_sub(a: &mut IntMatrix, c: usize, k: usize, q: &BigInt) {
    for r in 0..a.rows() {
        let v = a.get(r, c) - q * a.get(r, k);
        a.set(r, c, v);
    }
}

/// row k += row r
fn row_add(a: &mut IntMatrix, k: usize, r: usize) {
    for c in 0..a.cols() {
        let v = a.get(k, c) + a.get(r, c);
        a.set(k, c, v);
    }
}

fn negate_row(a: &mut IntMatrix, r: usize) {
    for c in 0..a.cols() {
        let v = -a.get(r, c).clone();
        a.set(r, c, v);
    }
}
