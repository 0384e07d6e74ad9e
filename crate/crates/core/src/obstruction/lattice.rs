//! Characteristic-class lattice enumeration for negative definite forms.
//!
//! Given a symmetric negative definite integer form `F` and a class `e`,
//! the set enumerated here consists of all integer vectors `e'` with
//! `e'ᵀFe' = eᵀFe` and `e' ≡ e (mod 2)`, taken modulo global sign. The
//! search is exact: an LDL-style completion of squares of `-F` over the
//! rationals turns the equation into nested interval constraints, so the
//! enumeration is provably exhaustive with no floating point involved.

use super::ObstructionError;
use crate::exactq::{IntMatrix, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

/// The enumerated set of characteristic-like classes. The condition that
/// classes restrict to `±e` on each boundary component is not part of this
/// enumeration; it depends on restriction maps a symbolic form cannot see.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharClassSet {
    pub form: IntMatrix,
    pub base: Vec<BigInt>,
    /// Common square `e·e` of every class in the set.
    pub square: BigInt,
    /// Canonical representatives modulo `±1`: first nonzero entry positive.
    pub classes: Vec<Vec<BigInt>>,
}

impl CharClassSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Completion of squares for a positive definite rational matrix `P`:
/// returns `(d, u)` with `xᵀPx = Σᵢ dᵢ(xᵢ + Σ_{j>i} uᵢⱼxⱼ)²`.
fn square_completion(p: Vec<Vec<Rational>>) -> (Vec<Rational>, Vec<Vec<Rational>>) {
    let n = p.len();
    let mut q = p;
    let mut d = vec![Rational::zero(); n];
    let mut u = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        d[i] = q[i][i].clone();
        assert!(d[i] > Rational::zero(), "form is not definite");
        for j in (i + 1)..n {
            u[i][j] = &q[i][j] / &d[i];
        }
        for r in (i + 1)..n {
            for c in (i + 1)..n {
                let adj = &q[i][r] * &q[i][c] / &d[i];
                q[r][c] -= adj;
            }
        }
    }
    (d, u)
}

fn canonical_mod_sign(mut v: Vec<BigInt>) -> Vec<BigInt> {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut v {
                *x = -x.clone();
            }
        }
    }
    v
}

fn form_value(form: &IntMatrix, v: &[BigInt]) -> BigInt {
    let n = form.rows();
    let mut acc = BigInt::zero();
    for r in 0..n {
        for c in 0..n {
            acc += &v[r] * form.get(r, c) * &v[c];
        }
    }
    acc
}

/// Recursive branch over coordinate `i` (descending). `remaining` is the
/// positive-form budget still available, `chosen[i+1..]` is fixed.
#[allow(clippy::too_many_arguments)]
fn descend(
    i: usize,
    d: &[Rational],
    u: &[Vec<Rational>],
    parity: &[BigInt],
    remaining: &Rational,
    chosen: &mut Vec<BigInt>,
    n: usize,
    hits: &mut BTreeSet<Vec<BigInt>>,
) {
    // offset c_i determined by the already-chosen higher coordinates
    let mut offset = Rational::zero();
    for j in (i + 1)..n {
        offset += &u[i][j] * Rational::from_integer(chosen[j].clone());
    }
    // integer window: d_i (x + offset)^2 <= remaining
    let ratio = remaining / &d[i];
    let bound: BigInt = ratio.floor().to_integer().sqrt() + 1;
    let center: BigInt = (-offset.clone()).floor().to_integer();
    let lo: BigInt = &center - &bound - 1;
    let hi: BigInt = &center + &bound + 1;

    let mut x = lo.clone();
    while x <= hi {
        let same_parity = ((&x - &parity[i]) % BigInt::from(2)).is_zero();
        if same_parity {
            let shifted = Rational::from_integer(x.clone()) + &offset;
            let used = &d[i] * &shifted * &shifted;
            if used <= *remaining {
                chosen[i] = x.clone();
                let rest = remaining - used;
                if i == 0 {
                    if rest.is_zero() {
                        hits.insert(canonical_mod_sign(chosen.clone()));
                    }
                } else {
                    descend(i - 1, d, u, parity, &rest, chosen, n, hits);
                }
            }
        }
        x += 1;
    }
}

/// Enumerates `{e' : e'ᵀFe' = eᵀFe, e' ≡ e mod 2} / ±1` for a symmetric
/// negative definite form `F`. Definiteness is verified through the signs
/// of the leading principal minors.
pub fn enumerate_char_classes(
    form: &IntMatrix,
    e: &[BigInt],
) -> Result<CharClassSet, ObstructionError> {
    if !form.is_symmetric() {
        return Err(ObstructionError::FormNotSymmetric);
    }
    let n = form.rows();
    if e.len() != n {
        return Err(ObstructionError::ClassLengthMismatch(e.len(), n));
    }
    for (k, det) in form.leading_principal_minors().iter().enumerate() {
        let expected_positive = (k + 1) % 2 == 0;
        let ok = if expected_positive {
            det.is_positive()
        } else {
            det.is_negative()
        };
        if !ok {
            return Err(ObstructionError::FormNotNegativeDefinite(k + 1));
        }
    }

    let square = form_value(form, e);
    let target = Rational::from_integer(-square.clone());

    // positive definite counterpart -F, as rationals
    let p: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| Rational::from_integer(-form.get(r, c).clone()))
                .collect()
        })
        .collect();
    let (d, u) = square_completion(p);

    let mut hits = BTreeSet::new();
    let mut chosen = vec![BigInt::zero(); n];
    descend(n - 1, &d, &u, e, &target, &mut chosen, n, &mut hits);

    Ok(CharClassSet {
        form: form.clone(),
        base: e.to_vec(),
        square,
        classes: hits.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big_vec(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn diag(entries: &[i64]) -> IntMatrix {
        let n = entries.len();
        let mut m = vec![0i64; n * n];
        for (i, &d) in entries.iter().enumerate() {
            m[i * n + i] = d;
        }
        IntMatrix::from_i64(n, n, &m)
    }

    /// Independent oracle: plain box search over the sup-norm ball.
    fn box_oracle(form: &IntMatrix, e: &[BigInt]) -> BTreeSet<Vec<BigInt>> {
        let n = form.rows();
        let square = form_value(form, e);
        let radius: i64 = {
            let max_diag = (0..n)
                .map(|i| i64::try_from(&form.get(i, i).abs()).unwrap())
                .max()
                .unwrap();
            let abs_sq = i64::try_from(&square.abs()).unwrap();
            ((abs_sq as f64).sqrt().ceil() as i64) * max_diag + 1
        };
        let mut out = BTreeSet::new();
        let mut v = vec![-radius; n];
        loop {
            let vb = big_vec(&v);
            let parity_ok = (0..n).all(|i| ((&vb[i] - &e[i]) % BigInt::from(2)).is_zero());
            if parity_ok && form_value(form, &vb) == square {
                out.insert(canonical_mod_sign(vb));
            }
            // odometer
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                v[i] += 1;
                if v[i] <= radius {
                    break;
                }
                v[i] = -radius;
                i += 1;
            }
        }
    }

    #[test]
    fn single_class_for_unit_vector() {
        let set = enumerate_char_classes(&diag(&[-1, -1]), &big_vec(&[1, 0])).unwrap();
        assert_eq!(set.classes, vec![big_vec(&[1, 0])]);
    }

    #[test]
    fn zero_class_is_alone() {
        let set = enumerate_char_classes(&diag(&[-1, -2, -3]), &big_vec(&[0, 0, 0])).unwrap();
        assert_eq!(set.classes, vec![big_vec(&[0, 0, 0])]);
    }

    #[test]
    fn odd_vector_in_rank_four() {
        let set =
            enumerate_char_classes(&diag(&[-1, -1, -1, -1]), &big_vec(&[1, 1, 1, 1])).unwrap();
        // all sixteen sign patterns of (±1,±1,±1,±1), modulo the global sign
        assert_eq!(set.len(), 8);
        assert_eq!(set.square, BigInt::from(-4));
    }

    #[test]
    fn rejects_bad_forms() {
        let asym = IntMatrix::from_i64(2, 2, &[-1, 1, 0, -1]);
        assert!(matches!(
            enumerate_char_classes(&asym, &big_vec(&[0, 0])),
            Err(ObstructionError::FormNotSymmetric)
        ));
        let indef = IntMatrix::from_i64(2, 2, &[-1, 0, 0, 1]);
        assert!(matches!(
            enumerate_char_classes(&indef, &big_vec(&[0, 0])),
            Err(ObstructionError::FormNotNegativeDefinite(2))
        ));
        assert!(matches!(
            enumerate_char_classes(&diag(&[-1, -1]), &big_vec(&[1])),
            Err(ObstructionError::ClassLengthMismatch(1, 2))
        ));
    }

    #[test]
    fn nondiagonal_form() {
        // F = [[-2, 1], [1, -2]] is negative definite
        let f = IntMatrix::from_i64(2, 2, &[-2, 1, 1, -2]);
        let e = big_vec(&[1, 0]);
        let set = enumerate_char_classes(&f, &e).unwrap();
        let oracle = box_oracle(&f, &e);
        assert_eq!(set.classes, oracle.into_iter().collect::<Vec<_>>());
        assert!(set.classes.contains(&big_vec(&[1, 0])));
    }

    #[test]
    fn matches_box_oracle_on_diagonal_forms() {
        // all diagonal negative definite forms of rank <= 6 with entries in
        // {-1,-2,-3} and classes of square norm down to -4
        let diag_choices: [&[i64]; 7] = [
            &[-1],
            &[-1, -1],
            &[-1, -2],
            &[-2, -3],
            &[-1, -1, -1],
            &[-1, -1, -1, -1, -1],
            &[-1, -1, -1, -1, -1, -1],
        ];
        let class_choices: [&[i64]; 6] = [
            &[1, 0, 0, 0, 0, 0],
            &[1, 1, 0, 0, 0, 0],
            &[2, 0, 0, 0, 0, 0],
            &[1, 1, 1, 1, 0, 0],
            &[0, 0, 0, 0, 0, 0],
            &[1, 0, 1, 0, 1, 0],
        ];
        for entries in diag_choices {
            let n = entries.len();
            let form = diag(entries);
            for class in class_choices {
                let e = big_vec(&class[..n]);
                let square = form_value(&form, &e);
                if square < BigInt::from(-4) {
                    continue;
                }
                let set = enumerate_char_classes(&form, &e).unwrap();
                let oracle = box_oracle(&form, &e);
                assert_eq!(
                    set.classes,
                    oracle.into_iter().collect::<Vec<_>>(),
                    "form {entries:?}, class {class:?}"
                );
            }
        }
    }
}
