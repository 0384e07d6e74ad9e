//! Exact arbitrary-precision rational and modular arithmetic.
//!
//! All arithmetic in this module is over unbounded integers; there is no
//! floating point anywhere. Denominators of the quantities tracked by the
//! rest of the crate (τ bounds, Chern-Simons residues) grow like
//! `4pq(4pq-1)`, which overflows fixed-width types almost immediately.

mod snf;

pub use snf::{smith_normal_form, AbelianGroup, SnfResult};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Exact rational number, always in lowest terms with positive denominator.
///
/// Backed by [`num_rational::BigRational`], which maintains exactly the
/// canonical-form invariants we need (reduced, `den > 0`, zero is `0/1`).
pub type Rational = num_rational::BigRational;

/// Builds a rational from integer numerator and denominator.
///
/// Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds a rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `num/den` in lowest terms, or plain `num` when the
/// denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The two residue conventions used for Chern-Simons values: `SU(2)`
/// invariants live in ℝ/ℤ, `SO(3)` invariants in ℝ/4ℤ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Modulus {
    Mod1,
    Mod4,
}

impl Modulus {
    fn span(self) -> Rational {
        match self {
            Modulus::Mod1 => rat_int(1),
            Modulus::Mod4 => rat_int(4),
        }
    }
}

/// A rational residue class with a canonical representative.
///
/// The representative convention is half-open on opposite sides for the two
/// moduli: `Mod1` representatives lie in `[0, 1)` while `Mod4`
/// representatives lie in `(0, 4]`. The latter matches the convention that
/// the trivial connection has Chern-Simons invariant 4, not 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CsValue {
    value: Rational,
    modulus: Modulus,
}

impl CsValue {
    /// Canonical representative of the class.
    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// The class of `-value` under the same modulus.
    pub fn negated(&self) -> CsValue {
        normalize_mod(&-self.value.clone(), self.modulus)
    }
}

impl fmt::Display for CsValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.value))
    }
}

/// Reduces `r` to the canonical representative of its residue class:
/// `[0, 1)` for `Mod1` and `(0, 4]` for `Mod4`.
pub fn normalize_mod(r: &Rational, m: Modulus) -> CsValue {
    let span = m.span();
    // floor(r / span) over exact rationals
    let q = (r / &span).floor();
    let mut value = r - q * &span;
    match m {
        Modulus::Mod1 => {
            // value in [0, span) already
        }
        Modulus::Mod4 => {
            if value.is_zero() {
                value = span;
            }
        }
    }
    CsValue { value, modulus: m }
}

/// Dense integer matrix with unbounded entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// Builds a matrix from row-major entries. Panics if the entry count
    /// does not match `rows * cols` or if a dimension is zero.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&e| BigInt::from(e)).collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        IntMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Exact determinant by cofactor expansion. Intended for the small
    /// matrices this crate sees (presentation matrices, definite forms of
    /// rank ≤ 6); not for large inputs.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let mut acc = BigInt::zero();
        for c in 0..n {
            let top = self.get(0, c);
            if top.is_zero() {
                continue;
            }
            let minor = self.minor(0, c);
            let term = top * minor.det();
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> IntMatrix {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in 0..self.rows {
            if r == skip_r {
                continue;
            }
            for c in 0..self.cols {
                if c == skip_c {
                    continue;
                }
                entries.push(self.get(r, c).clone());
            }
        }
        IntMatrix::new(self.rows - 1, self.cols - 1, entries)
    }

    /// Leading principal minor determinants `det(M[..k, ..k])` for
    /// `k = 1..=n`.
    pub fn leading_principal_minors(&self) -> Vec<BigInt> {
        assert!(self.is_square());
        (1..=self.rows)
            .map(|k| {
                let mut entries = Vec::with_capacity(k * k);
                for r in 0..k {
                    for c in 0..k {
                        entries.push(self.get(r, c).clone());
                    }
                }
                IntMatrix::new(k, k, entries).det()
            })
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Presents the abelian group of an integer presentation matrix: torsion
/// factors of order > 1 (in divisibility order) plus the free rank
/// `cols - rank`.
pub fn h1_presented(m: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(m);
    let torsion: Vec<BigInt> = snf
        .invariant_factors
        .iter()
        .filter(|d| !d.is_one())
        .cloned()
        .collect();
    AbelianGroup {
        torsion,
        free_rank: m.cols() - snf.rank,
    }
}

/// Solves a simultaneous system of congruences `x ≡ rᵢ (mod mᵢ)`.
///
/// Moduli need not be pairwise coprime; an inconsistent system returns
/// `None` (no-solution is a value, not an error). The result is the unique
/// residue modulo the lcm of the moduli. An empty system yields `0 mod 1`.
pub fn crt_solve(congruences: &[(BigInt, BigInt)]) -> Option<(BigInt, BigInt)> {
    let mut r0 = BigInt::zero();
    let mut m0 = BigInt::one();
    for (r, m) in congruences {
        assert!(m.is_positive(), "moduli must be positive");
        let (r1, m1) = merge_congruence(&r0, &m0, r, m)?;
        r0 = r1;
        m0 = m1;
    }
    Some((r0, m0))
}

/// Merges `x ≡ r0 (mod m0)` with `x ≡ r1 (mod m1)`.
fn merge_congruence(
    r0: &BigInt,
    m0: &BigInt,
    r1: &BigInt,
    m1: &BigInt,
) -> Option<(BigInt, BigInt)> {
    let gcd_ext = m0.extended_gcd(m1);
    let g = &gcd_ext.gcd;
    let diff = r1 - r0;
    let (q, rem) = diff.div_rem(g);
    if !rem.is_zero() {
        return None;
    }
    let lcm = m0 / g * m1;
    // x = r0 + m0 * (q * x_coeff mod (m1/g))
    let m1g = m1 / g;
    let t = (q * &gcd_ext.x).mod_floor(&m1g);
    let x = (r0 + m0 * t).mod_floor(&lcm);
    Some((x, lcm))
}

/// Modular inverse of `a` modulo `m > 0`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let ext = a.mod_floor(m).extended_gcd(m);
    if ext.gcd.is_one() {
        Some(ext.x.mod_floor(m))
    } else {
        None
    }
}
