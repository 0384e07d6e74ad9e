//! Unit-quaternion model of `SU(2)` and representation analysis for the
//! branched double cover of a Whitehead double.
//!
//! The double cover decomposes into two knot-complement pieces glued to the
//! complement `Y` of the (2,4) torus link, whose fundamental group is
//! generated by the two meridians `μ₁, μ₂` subject to the single relator
//! `[μ₁⁻¹,μ₂][μ₁,μ₂⁻¹]`. Assigning unit quaternions to the meridians and
//! driving the relator to 1 produces representations of `π₁(Y)`; the
//! longitude and gluing words then decide how such a representation can
//! extend across the knot complements. The forcing mechanism: the square
//! `(μ₁μ₂⁻¹)²` is central, so a representation that is nonabelian on `Y`
//! sends it — and, via `μ_{Kᵢ} = μ_{Aᵢ}⁻²λ_{Aᵢ}`, both knot meridians —
//! to `±1`.
//!
//! Floating-point quaternions carry the numerical search; an exact integer
//! submode anchors the pipeline at the Lipschitz-unit witness `(i, j)`
//! with zero rounding error.

mod solver;

pub use solver::{random_unit_quaternion, solve_relator, SolveOutcome, SolverConfig};

use thiserror::Error;

/// Unit-norm tolerance accepted for solver seeds and inputs.
pub const EPS_NORM: f64 = 1e-12;
/// A representation is valid when its relator residual is below this.
pub const EPS_REP: f64 = 1e-9;
/// Commutator-distance threshold separating abelian from nonabelian pairs.
pub const EPS_ABELIAN: f64 = 1e-6;
/// Iteration budget for the relator solver.
pub const MAX_ITERS: u32 = 500;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuatrepError {
    #[error("word references generator {0} but only {1} are assigned")]
    UnassignedGenerator(usize, usize),
    #[error("seed component is not a unit quaternion (norm error {0:.3e})")]
    InvalidSeed(f64),
    #[error("representation is invalid: relator residual {residual:.3e} exceeds {tol:.3e}")]
    InvalidRep { residual: f64, tol: f64 },
    #[error("p and q must be coprime, got ({0}, {1})")]
    NonCoprime(i64, i64),
    #[error("torus knot parameters must be at least 2, got ({0}, {1})")]
    DegenerateTorusKnot(i64, i64),
}

/// Quaternion with `f64` components, `w + xi + yj + zk`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quat {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quat {
    pub const ONE: Quat = Quat {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };
    pub const I: Quat = Quat {
        w: 0.0,
        x: 1.0,
        y: 0.0,
        z: 0.0,
    };
    pub const J: Quat = Quat {
        w: 0.0,
        x: 0.0,
        y: 1.0,
        z: 0.0,
    };
    pub const K: Quat = Quat {
        w: 0.0,
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };

    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Quat {
        Quat { w, x, y, z }
    }

    /// `cos θ + sin θ · i`, a point on the diagonal maximal torus.
    pub fn torus(theta: f64) -> Quat {
        Quat::new(theta.cos(), theta.sin(), 0.0, 0.0)
    }

    pub fn conj(self) -> Quat {
        Quat::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(self) -> Quat {
        let n = self.norm();
        Quat::new(self.w / n, self.x / n, self.y / n, self.z / n)
    }

    pub fn is_unit(self, eps: f64) -> bool {
        (self.norm() - 1.0).abs() <= eps
    }

    pub fn dist(self, other: Quat) -> f64 {
        let d = Quat::new(
            self.w - other.w,
            self.x - other.x,
            self.y - other.y,
            self.z - other.z,
        );
        d.norm()
    }

    /// Distance to the nearer central element `±1`.
    pub fn center_dist(self) -> f64 {
        self.dist(Quat::ONE).min(self.dist(-Quat::ONE))
    }

    /// Commutator `a b a⁻¹ b⁻¹` for unit quaternions (inverse = conjugate).
    pub fn commutator(self, other: Quat) -> Quat {
        self * other * self.conj() * other.conj()
    }
}

impl std::ops::Mul for Quat {
    type Output = Quat;
    fn mul(self, r: Quat) -> Quat {
        Quat::new(
            self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        )
    }
}

impl std::ops::Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl std::fmt::Display for Quat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{:+.6}{:+.6}i{:+.6}j{:+.6}k",
            self.w, self.x, self.y, self.z
        )
    }
}

/// Quaternion with integer components: the exact submode. Closed under
/// multiplication and conjugation, so words in Lipschitz units like
/// `±1, ±i, ±j, ±k` evaluate with zero arithmetic error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuatInt {
    pub w: i64,
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl QuatInt {
    pub const ONE: QuatInt = QuatInt {
        w: 1,
        x: 0,
        y: 0,
        z: 0,
    };
    pub const I: QuatInt = QuatInt {
        w: 0,
        x: 1,
        y: 0,
        z: 0,
    };
    pub const J: QuatInt = QuatInt {
        w: 0,
        x: 0,
        y: 1,
        z: 0,
    };
    pub const K: QuatInt = QuatInt {
        w: 0,
        x: 0,
        y: 0,
        z: 1,
    };

    pub fn new(w: i64, x: i64, y: i64, z: i64) -> QuatInt {
        QuatInt { w, x, y, z }
    }

    pub fn conj(self) -> QuatInt {
        QuatInt::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> i64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn is_unit(self) -> bool {
        self.norm_sqr() == 1
    }

    pub fn to_f64(self) -> Quat {
        Quat::new(self.w as f64, self.x as f64, self.y as f64, self.z as f64)
    }

    pub fn commutator(self, other: QuatInt) -> QuatInt {
        assert!(
            self.is_unit() && other.is_unit(),
            "exact commutator needs units"
        );
        self * other * self.conj() * other.conj()
    }
}

impl std::ops::Mul for QuatInt {
    type Output = QuatInt;
    fn mul(self, r: QuatInt) -> QuatInt {
        QuatInt::new(
            self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        )
    }
}

impl std::ops::Neg for QuatInt {
    type Output = QuatInt;
    fn neg(self) -> QuatInt {
        QuatInt::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// A word in a declared generating set: a sequence of `(generator id,
/// exponent)` letters with exponents `±1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupWord {
    letters: Vec<(usize, i8)>,
}

impl GroupWord {
    pub fn new(letters: Vec<(usize, i8)>) -> GroupWord {
        assert!(letters.iter().all(|&(_, e)| e == 1 || e == -1));
        GroupWord { letters }
    }

    pub fn empty() -> GroupWord {
        GroupWord {
            letters: Vec::new(),
        }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GroupWord { letters }
    }
}

/// Generator ids for the two link-group meridians.
pub const MU1: usize = 0;
pub const MU2: usize = 1;

/// `[a, b] = a b a⁻¹ b⁻¹` as a word in two given generators.
fn commutator_word(a: (usize, i8), b: (usize, i8)) -> Vec<(usize, i8)> {
    vec![a, b, (a.0, -a.1), (b.0, -b.1)]
}

/// The (2,4) torus-link relator `[μ₁⁻¹, μ₂][μ₁, μ₂⁻¹]`.
pub fn relator_word() -> GroupWord {
    let mut letters = commutator_word((MU1, -1), (MU2, 1));
    letters.extend(commutator_word((MU1, 1), (MU2, -1)));
    GroupWord::new(letters)
}

/// Longitude `λ₁ = μ₁ μ₂ μ₁⁻¹ μ₂` of the first link component.
pub fn longitude1_word() -> GroupWord {
    GroupWord::new(vec![(MU1, 1), (MU2, 1), (MU1, -1), (MU2, 1)])
}

/// Longitude `λ₂ = μ₂ μ₁ μ₂⁻¹ μ₁` of the second link component.
pub fn longitude2_word() -> GroupWord {
    GroupWord::new(vec![(MU2, 1), (MU1, 1), (MU2, -1), (MU1, 1)])
}

/// Glued knot meridian `μ_{K₁} = μ₁⁻² λ₁`.
pub fn knot_meridian1_word() -> GroupWord {
    GroupWord::new(vec![(MU1, -1), (MU1, -1)]).concat(&longitude1_word())
}

/// Glued knot meridian `μ_{K₂} = μ₂⁻² λ₂`.
pub fn knot_meridian2_word() -> GroupWord {
    GroupWord::new(vec![(MU2, -1), (MU2, -1)]).concat(&longitude2_word())
}

/// The central square `(μ₁ μ₂⁻¹)²`.
pub fn central_square_word() -> GroupWord {
    GroupWord::new(vec![(MU1, 1), (MU2, -1), (MU1, 1), (MU2, -1)])
}

/// Evaluates a word left to right under the assignment, with exponent `-1`
/// interpreted as the quaternion inverse (conjugate of a unit).
pub fn eval_word(w: &GroupWord, assignment: &[Quat]) -> Result<Quat, QuatrepError> {
    let mut acc = Quat::ONE;
    for &(g, e) in w.letters() {
        let q = *assignment
            .get(g)
            .ok_or(QuatrepError::UnassignedGenerator(g, assignment.len()))?;
        acc = acc * if e == 1 { q } else { q.conj() };
    }
    Ok(acc)
}

/// Exact-integer evaluation; all assigned values must be unit integer
/// quaternions so that inverses are conjugates.
pub fn eval_word_exact(w: &GroupWord, assignment: &[QuatInt]) -> Result<QuatInt, QuatrepError> {
    let mut acc = QuatInt::ONE;
    for &(g, e) in w.letters() {
        let q = *assignment
            .get(g)
            .ok_or(QuatrepError::UnassignedGenerator(g, assignment.len()))?;
        assert!(q.is_unit(), "exact evaluation requires unit quaternions");
        acc = acc * if e == 1 { q } else { q.conj() };
    }
    Ok(acc)
}

/// A pair of meridian images with the relator residual of the assignment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkRep {
    pub mu1: Quat,
    pub mu2: Quat,
    pub residual: f64,
}

impl LinkRep {
    /// Builds the representation datum, computing the residual
    /// `‖relator(μ₁,μ₂) - 1‖`.
    pub fn new(mu1: Quat, mu2: Quat) -> LinkRep {
        let rel = eval_word(&relator_word(), &[mu1, mu2]).expect("relator uses two generators");
        LinkRep {
            mu1,
            mu2,
            residual: rel.dist(Quat::ONE),
        }
    }

    pub fn is_valid(&self, tol: f64) -> bool {
        self.residual < tol
    }

    /// `‖[μ₁, μ₂] - 1‖`, the abelianness witness.
    pub fn commutator_witness(&self) -> f64 {
        self.mu1.commutator(self.mu2).dist(Quat::ONE)
    }
}

/// Image type of a subgroup: abelian or nonabelian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabelAN {
    A,
    N,
}

impl std::fmt::Display for LabelAN {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LabelAN::A => write!(f, "A"),
            LabelAN::N => write!(f, "N"),
        }
    }
}

/// Abelian/nonabelian label with the commutator-norm witness behind it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbelianLabel {
    pub label: LabelAN,
    pub witness: f64,
}

/// Labels the pair nonabelian exactly when `‖[μ₁,μ₂] - 1‖ > eps`.
pub fn classify_abelian(rep: &LinkRep, eps: f64) -> AbelianLabel {
    let witness = rep.commutator_witness();
    AbelianLabel {
        label: if witness > eps {
            LabelAN::N
        } else {
            LabelAN::A
        },
        witness,
    }
}

/// Longitude and knot-meridian values of a representation, with the
/// centrality checks that are forced when the pair is nonabelian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeridianReport {
    pub lambda1: Quat,
    pub lambda2: Quat,
    pub meridian_k1: Quat,
    pub meridian_k2: Quat,
    pub central_square: Quat,
    pub commutator_witness: f64,
    pub nonabelian: bool,
    pub central_square_center_dist: f64,
    pub meridian_k1_center_dist: f64,
    pub meridian_k2_center_dist: f64,
    /// For a nonabelian pair: all three center distances below tolerance.
    /// Vacuously true for an abelian pair.
    pub identities_hold: bool,
}

/// Evaluates the longitude words, the glued knot meridians
/// `μ_{Kᵢ} = μ_{Aᵢ}⁻²λ_{Aᵢ}`, and the central square, then checks that a
/// nonabelian representation sends the central square and both knot
/// meridians to within `tol` of `±1`.
pub fn central_meridian_report(rep: &LinkRep, tol: f64) -> Result<MeridianReport, QuatrepError> {
    if !rep.is_valid(tol.max(EPS_REP)) {
        return Err(QuatrepError::InvalidRep {
            residual: rep.residual,
            tol: tol.max(EPS_REP),
        });
    }
    let assign = [rep.mu1, rep.mu2];
    let lambda1 = eval_word(&longitude1_word(), &assign)?;
    let lambda2 = eval_word(&longitude2_word(), &assign)?;
    let meridian_k1 = eval_word(&knot_meridian1_word(), &assign)?;
    let meridian_k2 = eval_word(&knot_meridian2_word(), &assign)?;
    let central_square = eval_word(&central_square_word(), &assign)?;
    let commutator_witness = rep.commutator_witness();
    let nonabelian = commutator_witness > EPS_ABELIAN;
    let central_square_center_dist = central_square.center_dist();
    let meridian_k1_center_dist = meridian_k1.center_dist();
    let meridian_k2_center_dist = meridian_k2.center_dist();
    let identities_hold = !nonabelian
        || (central_square_center_dist < tol
            && meridian_k1_center_dist < tol
            && meridian_k2_center_dist < tol);
    Ok(MeridianReport {
        lambda1,
        lambda2,
        meridian_k1,
        meridian_k2,
        central_square,
        commutator_witness,
        nonabelian,
        central_square_center_dist,
        meridian_k1_center_dist,
        meridian_k2_center_dist,
        identities_hold,
    })
}

/// Exact-integer variant of [`central_meridian_report`] for Lipschitz-unit
/// assignments: returns the word values with no rounding at all.
pub fn central_meridian_report_exact(
    mu1: QuatInt,
    mu2: QuatInt,
) -> Result<(QuatInt, QuatInt, QuatInt, QuatInt, QuatInt), QuatrepError> {
    let assign = [mu1, mu2];
    let lambda1 = eval_word_exact(&longitude1_word(), &assign)?;
    let lambda2 = eval_word_exact(&longitude2_word(), &assign)?;
    let mk1 = eval_word_exact(&knot_meridian1_word(), &assign)?;
    let mk2 = eval_word_exact(&knot_meridian2_word(), &assign)?;
    let csq = eval_word_exact(&central_square_word(), &assign)?;
    Ok((lambda1, lambda2, mk1, mk2, csq))
}

/// Arcs of irreducible `SU(2)` character classes of the `(p,q)` torus-knot
/// group `⟨x, y | xᵖ = y^q⟩`: one label `(k, l)` per arc, `1 ≤ k ≤ p-1`,
/// `1 ≤ l ≤ q-1`, `k ≡ l (mod 2)`. There are `(p-1)(q-1)/2` of them.
pub fn torus_knot_irreps(p: i64, q: i64) -> Result<Vec<(i64, i64)>, QuatrepError> {
    if p < 2 || q < 2 {
        return Err(QuatrepError::DegenerateTorusKnot(p, q));
    }
    if num_integer::gcd(p, q) != 1 {
        return Err(QuatrepError::NonCoprime(p, q));
    }
    let mut labels = Vec::new();
    for k in 1..p {
        for l in 1..q {
            if (k - l) % 2 == 0 {
                labels.push((k, l));
            }
        }
    }
    Ok(labels)
}

/// Which strata of the branched double cover's representation space a
/// label triple `(x₁, y, x₂)` can carry. `x₁, x₂` label the two knot
/// complements, `y` the link complement between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StratumVerdict {
    /// No representation restricts this way.
    Empty,
    /// Only the trivial representation restricts this way.
    TrivialOnly,
    /// Nontrivial representations are allowed.
    Allowed,
}

/// Every representation is abelian on the middle piece, so all `y = N`
/// triples are empty; `(A,A,A)` carries only the trivial representation;
/// the rest are allowed. Symmetric under swapping `x₁ ↔ x₂`.
pub fn label_triple_allowed(x1: LabelAN, y: LabelAN, x2: LabelAN) -> StratumVerdict {
    match (x1, y, x2) {
        (_, LabelAN::N, _) => StratumVerdict::Empty,
        (LabelAN::A, LabelAN::A, LabelAN::A) => StratumVerdict::TrivialOnly,
        _ => StratumVerdict::Allowed,
    }
}
