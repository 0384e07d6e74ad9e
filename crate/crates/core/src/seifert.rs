//! Brieskorn spheres: the surgery dictionary for torus knots, enumeration
//! of flat `SU(2)` connection classes with their Chern-Simons invariants,
//! and minimal-Chern-Simons (τ) lower bounds.
//!
//! ## Conventions
//!
//! `Σ(a₁,a₂,a₃)` carries the orientation it inherits as the link of the
//! Brieskorn singularity; the stored orientation sign flips it. `1/k`
//! surgery on the positive torus knot `T(p,q)` is `-Σ(p,q,pqk-1)`, and on
//! `T(p,-q)` it is `-Σ(p,q,pqk+1)`.
//!
//! Irreducible flat `SU(2)` connections are labeled by rotation numbers
//! `(ℓ₁,ℓ₂,ℓ₃)` with `0 < ℓᵢ < aᵢ`: the holonomy around the `i`-th
//! exceptional fiber is conjugate to `exp(iπℓᵢ/aᵢ)`. Writing the Seifert
//! relations as `xᵢ^{aᵢ} h^{βᵢ} = 1`, `x₁x₂x₃ = h^{β₀}` with the central
//! class `h` sent to `(-1)^m`, a label is admissible iff `ℓᵢ ≡ m·βᵢ (mod 2)`
//! for each `i` and the three holonomy angles admit a product landing on
//! the required center sign — a strict spherical-triangle condition,
//! checked here in exact rational arithmetic. The Chern-Simons invariant of
//! the class is `e²/(4a) mod 1` with `a = a₁a₂a₃` and `e` the canonical
//! residue solving `e ≡ -ℓᵢ·(a/aᵢ) (mod aᵢ)`. Orientation reversal negates
//! all values mod 1. A genuinely independent reference enumeration lives in
//! [`reference`] and must agree class-by-class.

use crate::exactq::{self, crt_solve, normalize_mod, CsValue, Modulus, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Orientation sign of a 3-manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Plus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeifertError {
    #[error("p and q must be coprime, got ({0}, {1})")]
    NonCoprime(i64, i64),
    #[error("torus knot parameters must be at least 2, got ({0}, {1})")]
    DegenerateTorusKnot(i64, i64),
    #[error("surgery coefficient k must be positive, got {0}")]
    NonPositiveSurgery(i64),
    #[error("Seifert fiber multiplicities must be pairwise coprime, got ({0}, {1}, {2})")]
    NonCoprimeFibers(i64, i64, i64),
    #[error("fiber multiplicity {0} is a lens-space degeneration; all fibers must be >= 2")]
    DegenerateFiber(i64),
    #[error("fiber multiplicities must be positive, got {0}")]
    InvalidFiber(i64),
    #[error("denominator must be positive, got {0}")]
    NonPositiveDenominator(i64),
}

/// Validation strictness for torus-knot formulas. `Strict` rejects `p` or
/// `q` below 2 (the knot degenerates to an unknot); `Permissive` evaluates
/// the formulas verbatim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Strict,
    Permissive,
}

/// An oriented Seifert fibered homology sphere `±Σ(a₁,a₂,a₃)` with three
/// exceptional fibers. Multiplicities are stored sorted ascending; the
/// orientation is a separate sign, never baked into the ordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BrieskornSphere {
    fibers: [i64; 3],
    orientation: Sign,
}

impl BrieskornSphere {
    /// Builds `±Σ(a₁,a₂,a₃)`, requiring pairwise coprime multiplicities,
    /// all at least 2.
    pub fn new(a1: i64, a2: i64, a3: i64, orientation: Sign) -> Result<Self, SeifertError> {
        let s = Self::new_permissive(a1, a2, a3, orientation)?;
        if let Some(&d) = s.fibers.iter().find(|&&a| a == 1) {
            return Err(SeifertError::DegenerateFiber(d));
        }
        Ok(s)
    }

    /// Like [`BrieskornSphere::new`] but admits multiplicity 1 (a lens-space
    /// degeneration). Flat-connection enumeration rejects such spheres.
    pub fn new_permissive(
        a1: i64,
        a2: i64,
        a3: i64,
        orientation: Sign,
    ) -> Result<Self, SeifertError> {
        let mut fibers = [a1, a2, a3];
        if let Some(&bad) = fibers.iter().find(|&&a| a < 1) {
            return Err(SeifertError::InvalidFiber(bad));
        }
        if fibers[0].gcd(&fibers[1]) != 1
            || fibers[0].gcd(&fibers[2]) != 1
            || fibers[1].gcd(&fibers[2]) != 1
        {
            return Err(SeifertError::NonCoprimeFibers(a1, a2, a3));
        }
        fibers.sort_unstable();
        Ok(BrieskornSphere {
            fibers,
            orientation,
        })
    }

    pub fn fibers(&self) -> [i64; 3] {
        self.fibers
    }

    pub fn orientation(&self) -> Sign {
        self.orientation
    }

    pub fn reversed(&self) -> BrieskornSphere {
        BrieskornSphere {
            fibers: self.fibers,
            orientation: self.orientation.flipped(),
        }
    }

    /// Product `a₁a₂a₃`.
    pub fn fiber_product(&self) -> i64 {
        self.fibers[0] * self.fibers[1] * self.fibers[2]
    }

    /// Orientation-free name, e.g. `Sigma(2,3,11)`.
    pub fn base_name(&self) -> String {
        format!(
            "Sigma({},{},{})",
            self.fibers[0], self.fibers[1], self.fibers[2]
        )
    }
}

impl fmt::Display for BrieskornSphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.orientation {
            Sign::Plus => write!(f, "{}", self.base_name()),
            Sign::Minus => write!(f, "-{}", self.base_name()),
        }
    }
}

/// A conjugacy class of irreducible flat `SU(2)` connections on a Brieskorn
/// sphere, labeled by its rotation numbers and carrying the `SU(2)`
/// Chern-Simons invariant mod 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatConnectionClass {
    pub rotation_numbers: (i64, i64, i64),
    pub cs_su2: CsValue,
}

impl FlatConnectionClass {
    /// The `SO(3)` Chern-Simons class of the same connection, displayed in
    /// `(0, 4]`: the two normalizations are related by `cs_so3 = -4·cs_su2`.
    pub fn cs_so3_mod4(&self) -> CsValue {
        let minus_four = exactq::rat_int(-4);
        normalize_mod(&(minus_four * self.cs_su2.value()), Modulus::Mod4)
    }
}

/// Lower bound for the minimal relative Chern-Simons invariant τ of a
/// 3-manifold, together with the provenance of the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauBound {
    value: Rational,
    kind: TauBoundKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauBoundKind {
    /// All Chern-Simons values have denominator dividing `d`, so τ ≥ 1/d.
    FromDenominator,
    /// Finite fundamental group of order `p` forces τ ≥ 1/p.
    FromFiniteGroup,
    /// The branched double cover of a doubled torus knot: τ ≥ 1/(pq(4pq-1)).
    WhiteheadCover,
    /// A lens-space bound taken as input data.
    LensInput,
}

impl TauBound {
    pub fn new(value: Rational, kind: TauBoundKind) -> Self {
        use num_traits::Zero;
        assert!(
            value > Rational::zero() && value <= exactq::rat_int(4),
            "tau bound must lie in (0, 4]"
        );
        TauBound { value, kind }
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn kind(&self) -> TauBoundKind {
        self.kind
    }
}

impl fmt::Display for TauBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", exactq::format_rational(&self.value))
    }
}

fn check_torus_knot(p: i64, q: i64, mode: Mode) -> Result<(), SeifertError> {
    if p < 1 || q < 1 || (mode == Mode::Strict && (p < 2 || q < 2)) {
        return Err(SeifertError::DegenerateTorusKnot(p, q));
    }
    if p.gcd(&q) != 1 {
        return Err(SeifertError::NonCoprime(p, q));
    }
    Ok(())
}

/// `1/k` surgery on the torus knot `T(p, ±q)`: returns `-Σ(p,q,pqk-1)` for
/// `q_sign = +` and `-Σ(p,q,pqk+1)` for `q_sign = -`.
pub fn surgery_to_brieskorn(
    p: i64,
    q: i64,
    k: i64,
    q_sign: Sign,
) -> Result<BrieskornSphere, SeifertError> {
    check_torus_knot(p, q, Mode::Strict)?;
    if k < 1 {
        return Err(SeifertError::NonPositiveSurgery(k));
    }
    let third = match q_sign {
        Sign::Plus => p * q * k - 1,
        Sign::Minus => p * q * k + 1,
    };
    BrieskornSphere::new(p, q, third, Sign::Minus)
}

/// Denominator bounds for Chern-Simons values on the branched double cover
/// of the doubled torus knot `D(T(p,q))`: values on the stratum matching
/// `1/2`-surgery have denominator dividing `4pq(2pq-1)`, the remaining
/// nonabelian stratum has denominator dividing `4pq(4pq-1)`.
pub fn cs_denominators_whitehead(
    p: i64,
    q: i64,
    mode: Mode,
) -> Result<(BigInt, BigInt), SeifertError> {
    check_torus_knot(p, q, mode)?;
    let pq = BigInt::from(p) * BigInt::from(q);
    let four_pq = BigInt::from(4) * &pq;
    let naa = &four_pq * (BigInt::from(2) * &pq - 1);
    let nan = &four_pq * (BigInt::from(4) * &pq - 1);
    Ok((naa, nan))
}

/// If every Chern-Simons value of every flat `SO(3)` connection on `Y` is a
/// rational with denominator dividing `d`, then τ(Y, e) ≥ 1/d.
pub fn tau_lower_from_denominator(d: i64) -> Result<TauBound, SeifertError> {
    if d < 1 {
        return Err(SeifertError::NonPositiveDenominator(d));
    }
    Ok(TauBound::new(
        exactq::rat(1, d),
        TauBoundKind::FromDenominator,
    ))
}

/// τ ≥ 1/p for a manifold with finite fundamental group of order `p`.
pub fn tau_lower_finite_group(order: i64) -> Result<TauBound, SeifertError> {
    if order < 1 {
        return Err(SeifertError::NonPositiveDenominator(order));
    }
    Ok(TauBound::new(
        exactq::rat(1, order),
        TauBoundKind::FromFiniteGroup,
    ))
}

/// τ lower bound `1/(pq(4pq-1))` for `±Σ(D(T(p,q)))`. The bound is
/// orientation-independent: reversal negates Chern-Simons values, which
/// does not change their denominators.
pub fn tau_lower_whitehead_cover(
    p: i64,
    q: i64,
    _orientation: Sign,
) -> Result<TauBound, SeifertError> {
    check_torus_knot(p, q, Mode::Permissive)?;
    let pq = BigInt::from(p) * BigInt::from(q);
    let den = &pq * (BigInt::from(4) * &pq - 1);
    Ok(TauBound::new(
        Rational::new(BigInt::from(1), den),
        TauBoundKind::WhiteheadCover,
    ))
}

/// Normalized Seifert presentation data for `Σ(a₁,a₂,a₃)`: coefficients
/// `βᵢ` with `βᵢ·(a/aᵢ) ≡ 1 (mod aᵢ)`, `0 < βᵢ < aᵢ`, and the integer `β₀`
/// with `Σ βᵢ·(a/aᵢ) + β₀·a = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct SeifertData {
    a: [i64; 3],
    beta: [i64; 3],
    beta0: i64,
}

fn canonical_seifert_data(a: [i64; 3]) -> SeifertData {
    let product: i128 = a.iter().map(|&x| x as i128).product();
    let mut beta = [0i64; 3];
    for i in 0..3 {
        let cofactor = (product / a[i] as i128).rem_euclid(a[i] as i128);
        let inv = exactq::mod_inverse(&BigInt::from(cofactor), &BigInt::from(a[i]))
            .expect("cofactor is invertible for pairwise coprime fibers");
        beta[i] = i64::try_from(&inv).expect("inverse fits the fiber modulus");
    }
    let sum: i128 = (0..3)
        .map(|i| beta[i] as i128 * (product / a[i] as i128))
        .sum();
    let numer = 1 - sum;
    debug_assert_eq!(numer % product, 0);
    SeifertData {
        a,
        beta,
        beta0: i64::try_from(numer / product).expect("normalized Euler term fits i64"),
    }
}

/// Strict comparison `n1/d1 < n2/d2` for positive denominators.
fn frac_lt(n1: i128, d1: i128, n2: i128, d2: i128) -> bool {
    n1 * d2 < n2 * d1
}

/// Strict spherical-triangle condition for holonomy angles `πℓᵢ/aᵢ`: a
/// product of three `SU(2)` elements with these angles can reach the
/// required central element iff `|t₁-t₂| < t₃' < min(t₁+t₂, 2-(t₁+t₂))`,
/// where `tᵢ = ℓᵢ/aᵢ` and `t₃'` is `t₃` or `1-t₃` according to the target
/// center sign. Equality cases are reducible and excluded.
fn triangle_admissible(a: [i64; 3], l: [i64; 3], flip_third: bool) -> bool {
    let (a1, a2, a3) = (a[0] as i128, a[1] as i128, a[2] as i128);
    let (l1, l2, l3) = (l[0] as i128, l[1] as i128, l[2] as i128);
    let d12 = a1 * a2;
    let diff = (l1 * a2 - l2 * a1).abs();
    let sum = l1 * a2 + l2 * a1;
    let (n3, d3) = if flip_third { (a3 - l3, a3) } else { (l3, a3) };
    frac_lt(diff, d12, n3, d3) && frac_lt(n3, d3, sum, d12) && frac_lt(n3, d3, 2 * d12 - sum, d12)
}

/// All admissible rotation-number labels of `Σ(a₁,a₂,a₃)` (positive
/// orientation), as `(ℓ₁,ℓ₂,ℓ₃)` triples paired with the center sign
/// exponent `m` of the class.
fn admissible_labels(data: &SeifertData) -> Vec<([i64; 3], u8)> {
    let mut out = Vec::new();
    for m in 0u8..=1 {
        let flip = (m as i64 * data.beta0).rem_euclid(2) == 1;
        let start = |i: usize| -> i64 {
            if (m as i64 * data.beta[i]).rem_euclid(2) == 1 {
                1
            } else {
                2
            }
        };
        let mut l = [0i64; 3];
        l[0] = start(0);
        while l[0] < data.a[0] {
            l[1] = start(1);
            while l[1] < data.a[1] {
                l[2] = start(2);
                while l[2] < data.a[2] {
                    if triangle_admissible(data.a, l, flip) {
                        out.push((l, m));
                    }
                    l[2] += 2;
                }
                l[1] += 2;
            }
            l[0] += 2;
        }
    }
    out
}

/// The canonical residue `e ∈ [0, a)` with `e ≡ -ℓᵢ·(a/aᵢ) (mod aᵢ)`, and
/// the Chern-Simons value `e²/(4a) mod 1` it determines.
fn cs_from_label(data: &SeifertData, l: [i64; 3]) -> CsValue {
    let a: i128 = data.a.iter().map(|&x| x as i128).product();
    let congruences: Vec<(BigInt, BigInt)> = (0..3)
        .map(|i| {
            let cofactor = a / data.a[i] as i128;
            let residue = (-(l[i] as i128) * cofactor).rem_euclid(data.a[i] as i128);
            (BigInt::from(residue), BigInt::from(data.a[i]))
        })
        .collect();
    let (e, modulus) = crt_solve(&congruences).expect("pairwise coprime moduli are consistent");
    debug_assert_eq!(modulus, BigInt::from(a));
    let four_a = BigInt::from(4) * BigInt::from(a);
    let numer = (&e * &e).mod_floor(&four_a);
    normalize_mod(&Rational::new(numer, four_a), Modulus::Mod1)
}

/// Enumerates the conjugacy classes of irreducible flat `SU(2)` connections
/// on `Y`, one [`FlatConnectionClass`] per class, sorted by rotation
/// numbers. Every value times `4·a₁a₂a₃` is an integer, and orientation
/// reversal negates all values mod 1.
pub fn enumerate_flat_connections(
    y: &BrieskornSphere,
) -> Result<Vec<FlatConnectionClass>, SeifertError> {
    if let Some(&d) = y.fibers().iter().find(|&&a| a == 1) {
        return Err(SeifertError::DegenerateFiber(d));
    }
    let data = canonical_seifert_data(y.fibers());
    let mut classes: Vec<FlatConnectionClass> = admissible_labels(&data)
        .into_iter()
        .map(|(l, _m)| {
            let base = cs_from_label(&data, l);
            let cs_su2 = match y.orientation() {
                Sign::Plus => base,
                Sign::Minus => base.negated(),
            };
            FlatConnectionClass {
                rotation_numbers: (l[0], l[1], l[2]),
                cs_su2,
            }
        })
        .collect();
    classes.sort_by(|x, w| {
        x.rotation_numbers
            .cmp(&w.rotation_numbers)
            .then_with(|| x.cs_su2.value().cmp(w.cs_su2.value()))
    });
    Ok(classes)
}

/// Reference enumeration, coded independently of the production path: no
/// shared admissibility predicate, no CRT. Used to cross-check the
/// congruence-solving route.
pub mod reference {
    use super::{BrieskornSphere, FlatConnectionClass, SeifertError, Sign};
    use crate::exactq::{normalize_mod, Modulus, Rational};
    use num_bigint::BigInt;

    /// Seifert coefficients found by direct search instead of modular
    /// inversion: the lexicographically smallest `(β₁,β₂,β₃)` with
    /// `0 < βᵢ < aᵢ` and `a | 1 - Σ βᵢ(a/aᵢ)`. For pairwise coprime fibers
    /// this is the inverse-cofactor normalization.
    fn seifert_coefficients(a: [i64; 3]) -> ([i64; 3], i64) {
        let prod: i128 = a.iter().map(|&x| x as i128).product();
        let cof: Vec<i128> = (0..3).map(|i| prod / a[i] as i128).collect();
        for b1 in 1..a[0] {
            for b2 in 1..a[1] {
                for b3 in 1..a[2] {
                    let s = b1 as i128 * cof[0] + b2 as i128 * cof[1] + b3 as i128 * cof[2];
                    if (1 - s) % prod == 0 {
                        return ([b1, b2, b3], ((1 - s) / prod) as i64);
                    }
                }
            }
        }
        unreachable!("coprime cofactors always admit Seifert coefficients");
    }

    fn angles_admit_product(a: [i64; 3], l: [i64; 3], target_is_minus_one: bool) -> bool {
        // t_i = l_i/a_i over the common denominator D = a1*a2*a3
        let d: i128 = a.iter().map(|&x| x as i128).product();
        let t: Vec<i128> = (0..3).map(|i| l[i] as i128 * (d / a[i] as i128)).collect();
        let t3 = if target_is_minus_one { d - t[2] } else { t[2] };
        let lower = (t[0] - t[1]).abs();
        let upper = (t[0] + t[1]).min(2 * d - (t[0] + t[1]));
        lower < t3 && t3 < upper
    }

    /// Independent class list: every rotation triple is tested against both
    /// center signs, and the Chern-Simons residue comes from scanning all
    /// `e ∈ [0, a)` for the one satisfying the defining congruences.
    pub fn enumerate_flat_connections_scan(
        y: &BrieskornSphere,
    ) -> Result<Vec<FlatConnectionClass>, SeifertError> {
        if let Some(&deg) = y.fibers().iter().find(|&&f| f == 1) {
            return Err(SeifertError::DegenerateFiber(deg));
        }
        let a = y.fibers();
        let (beta, beta0) = seifert_coefficients(a);
        let prod: i128 = a.iter().map(|&x| x as i128).product();

        let mut classes = Vec::new();
        for l1 in 1..a[0] {
            for l2 in 1..a[1] {
                for l3 in 1..a[2] {
                    let l = [l1, l2, l3];
                    for m in 0i64..=1 {
                        let parity_ok = (0..3).all(|i| (l[i] - m * beta[i]).rem_euclid(2) == 0);
                        if !parity_ok {
                            continue;
                        }
                        let flip = (m * beta0).rem_euclid(2) == 1;
                        if !angles_admit_product(a, l, flip) {
                            continue;
                        }
                        let e = (0..prod)
                            .find(|&e| {
                                (0..3).all(|i| {
                                    let cof = prod / a[i] as i128;
                                    (e + l[i] as i128 * cof).rem_euclid(a[i] as i128) == 0
                                })
                            })
                            .expect("a residue satisfying the congruences exists");
                        let four_a = 4 * prod;
                        let numer = (e * e).rem_euclid(four_a);
                        let base = normalize_mod(
                            &Rational::new(BigInt::from(numer), BigInt::from(four_a)),
                            Modulus::Mod1,
                        );
                        let cs_su2 = match y.orientation() {
                            Sign::Plus => base,
                            Sign::Minus => base.negated(),
                        };
                        classes.push(FlatConnectionClass {
                            rotation_numbers: (l1, l2, l3),
                            cs_su2,
                        });
                    }
                }
            }
        }
        classes.sort_by(|x, w| {
            x.rotation_numbers
                .cmp(&w.rotation_numbers)
                .then_with(|| x.cs_su2.value().cmp(w.cs_su2.value()))
        });
        Ok(classes)
    }
}
