//! Symbolic cobordism-block calculus.
//!
//! A [`Block`] stands for a negative definite 4-manifold with a chosen
//! second-cohomology class, recorded only through the data the obstruction
//! machinery consumes: its boundary components, the energy `-e²`, hypothesis
//! flags, and an optional cs-partition of the boundary. Blocks are never
//! triangulated; the constructors encode the conclusions of the underlying
//! gauge-theoretic and Kirby-calculus facts, and the calculus here does the
//! bookkeeping those facts leave implicit.
//!
//! The contradiction pattern: a block with the odd-singular-parity property
//! whose entire boundary satisfies the Chern-Simons bound (empty `∂_gl`)
//! would carry a compact 1-dimensional moduli space with an odd number of
//! boundary points — impossible. [`contradiction_check`] detects exactly
//! that configuration, and [`certify_independence`] turns it into pairwise
//! integer inequalities for families of doubled torus knots.

mod certify;
mod lattice;

pub use certify::{certify_independence, Certificate, PairCheck, Verdict};
pub use lattice::{enumerate_char_classes, CharClassSet};

use crate::exactq::{rat_int, Rational};
use crate::seifert::{
    surgery_to_brieskorn, tau_lower_whitehead_cover, Sign, TauBound, TauBoundKind,
};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ObstructionError {
    #[error("p and q must be coprime and at least 2, got ({0}, {1})")]
    InvalidKnot(i64, i64),
    #[error("surgery coefficient k must be positive, got {0}")]
    InvalidSurgery(i64),
    #[error("knot {0} is not flagged positively-unknottable")]
    NotPositivelyUnknottable(String),
    #[error("boundary component {0} not found with the required orientation pairing")]
    GlueComponentMissing(String),
    #[error("boundary component {0} is not an integral homology sphere")]
    NotHomologySphere(String),
    #[error("gluing block must be negative definite with vanishing mod-2 first homology")]
    GlueFlagsMissing,
    #[error("component {0} must lie in the glue side of both partitions")]
    NotInGluePartition(String),
    #[error("duplicate boundary component name {0}")]
    DuplicateComponent(String),
    #[error("component {0} has a nontrivial restriction but no correction term was supplied")]
    MissingCorrection(String),
    #[error("form must be symmetric")]
    FormNotSymmetric,
    #[error("form must be negative definite (leading principal minor {0} has the wrong sign)")]
    FormNotNegativeDefinite(usize),
    #[error("class vector length {0} does not match form rank {1}")]
    ClassLengthMismatch(usize, usize),
    #[error("duplicate knot ({0}, {1}) in certificate input")]
    DuplicateKnot(i64, i64),
    #[error("block invariant violated: {0}")]
    InvalidBlock(String),
}

/// Homology type of a boundary 3-manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    IntegralHomologySphere,
    RationalHomologySphere,
}

/// One boundary component of a block.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryComponent {
    pub name: String,
    pub orientation: Sign,
    pub kind: ComponentKind,
    pub tau_lower: Option<TauBound>,
    /// Whether the class restricts trivially to this component. Always true
    /// on an integral homology sphere.
    pub e_restriction_trivial: bool,
}

impl BoundaryComponent {
    pub fn integral_sphere(name: impl Into<String>, orientation: Sign) -> Self {
        BoundaryComponent {
            name: name.into(),
            orientation,
            kind: ComponentKind::IntegralHomologySphere,
            tau_lower: None,
            e_restriction_trivial: true,
        }
    }

    pub fn with_tau(mut self, tau: TauBound) -> Self {
        self.tau_lower = Some(tau);
        self
    }

    fn oriented_name(&self) -> String {
        match self.orientation {
            Sign::Plus => self.name.clone(),
            Sign::Minus => format!("-{}", self.name),
        }
    }
}

/// Hypothesis flags carried by a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockFlags {
    pub negative_definite: bool,
    pub h1_mod2_zero: bool,
    /// The block's instanton moduli space is positive dimensional with an
    /// odd number of cone singularities.
    pub property_i: bool,
}

/// A cs-partition of a block's boundary: `gl` components are integral
/// homology spheres available for gluing, `cs` components satisfy the
/// strict Chern-Simons bound `τ > b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsPartition {
    pub gl: Vec<String>,
    pub cs: Vec<String>,
}

/// Failure report from a partition attempt: the component that neither
/// clears the bound nor is a homology sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionFailure {
    pub offender: String,
    pub tau_lower: Option<Rational>,
    pub bound: Rational,
}

impl fmt::Display for PartitionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.tau_lower {
            Some(t) => write!(
                f,
                "component {} has tau bound {} which does not strictly exceed {}",
                self.offender,
                crate::exactq::format_rational(t),
                crate::exactq::format_rational(&self.bound)
            ),
            None => write!(
                f,
                "component {} carries no tau bound and is not an integral homology sphere",
                self.offender
            ),
        }
    }
}

/// Symbolic 4-manifold piece. Immutable; gluing returns new blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    boundary: Vec<BoundaryComponent>,
    e_square: Rational,
    flags: BlockFlags,
    partition: Option<CsPartition>,
    provenance: Vec<String>,
}

impl Block {
    /// Validates the block invariants: `e² ≤ 0`, unique component names,
    /// the odd-parity property only on top of its standing hypotheses and
    /// with energy below 2, and any stored partition referring to real
    /// components with the `cs` side carrying τ bounds.
    pub fn new(
        boundary: Vec<BoundaryComponent>,
        e_square: Rational,
        flags: BlockFlags,
        partition: Option<CsPartition>,
        provenance: Vec<String>,
    ) -> Result<Block, ObstructionError> {
        if e_square > Rational::zero() {
            return Err(ObstructionError::InvalidBlock(
                "e^2 must be nonpositive on a negative definite block".into(),
            ));
        }
        let mut seen = std::collections::BTreeSet::new();
        for c in &boundary {
            if !seen.insert(c.name.clone()) {
                return Err(ObstructionError::DuplicateComponent(c.name.clone()));
            }
            if c.kind == ComponentKind::IntegralHomologySphere && !c.e_restriction_trivial {
                return Err(ObstructionError::InvalidBlock(format!(
                    "class restriction on homology sphere {} must be trivial",
                    c.name
                )));
            }
        }
        if flags.property_i {
            if !(flags.negative_definite && flags.h1_mod2_zero) {
                return Err(ObstructionError::InvalidBlock(
                    "the odd-parity property requires negative definiteness and H1(.;Z/2)=0".into(),
                ));
            }
            if -e_square.clone() >= rat_int(2) {
                return Err(ObstructionError::InvalidBlock(
                    "the odd-parity property requires -e^2 < 2".into(),
                ));
            }
        }
        if let Some(p) = &partition {
            for name in p.gl.iter().chain(p.cs.iter()) {
                if !boundary.iter().any(|c| &c.name == name) {
                    return Err(ObstructionError::GlueComponentMissing(name.clone()));
                }
            }
            for name in &p.cs {
                let c = boundary.iter().find(|c| &c.name == name).expect("checked");
                if c.tau_lower.is_none() {
                    return Err(ObstructionError::InvalidBlock(format!(
                        "partition places {} in the cs side without a tau bound",
                        name
                    )));
                }
            }
        }
        Ok(Block {
            boundary,
            e_square,
            flags,
            partition,
            provenance,
        })
    }

    pub fn boundary(&self) -> &[BoundaryComponent] {
        &self.boundary
    }

    pub fn e_square(&self) -> &Rational {
        &self.e_square
    }

    /// Instanton energy `-e²` of the block, which equals the relative
    /// Pontryagin number of its stabilized line bundle.
    pub fn energy(&self) -> Rational {
        -self.e_square.clone()
    }

    pub fn p1(&self) -> Rational {
        self.energy()
    }

    pub fn flags(&self) -> BlockFlags {
        self.flags
    }

    pub fn partition(&self) -> Option<&CsPartition> {
        self.partition.as_ref()
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    fn component(&self, name: &str) -> Option<&BoundaryComponent> {
        self.boundary.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.boundary.iter().map(|c| c.oriented_name()).collect();
        write!(
            f,
            "Block[e^2 = {}, boundary = {{{}}}]",
            crate::exactq::format_rational(&self.e_square),
            names.join(", ")
        )
    }
}

/// Minimal knot datum the doubling cobordism needs: an identifying label
/// and whether the knot unknots by positive-to-negative crossing changes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotDescriptor {
    pub label: String,
    pub positively_unknottable: bool,
}

impl KnotDescriptor {
    /// Positive torus knots have all-positive projections, hence unknot by
    /// positive-to-negative changes.
    pub fn positive_torus(p: i64, q: i64) -> KnotDescriptor {
        KnotDescriptor {
            label: format!("T({},{})", p, q),
            positively_unknottable: true,
        }
    }
}

fn check_knot(p: i64, q: i64) -> Result<(), ObstructionError> {
    if p < 2 || q < 2 || num_integer::gcd(p, q) != 1 {
        return Err(ObstructionError::InvalidKnot(p, q));
    }
    Ok(())
}

/// The truncated orbifold block over `Σ(p,q,pqk-1)`: a pair with the
/// odd-parity property, energy `-e² = 1/(pq(pqk-1))`, bounded by the
/// Brieskorn sphere together with three lens spaces whose τ bounds
/// `1/p, 1/q, 1/(pqk-1)` all strictly exceed the energy.
pub fn brieskorn_block(p: i64, q: i64, k: i64) -> Result<Block, ObstructionError> {
    check_knot(p, q)?;
    if k < 1 {
        return Err(ObstructionError::InvalidSurgery(k));
    }
    let third = p * q * k - 1;
    let sphere = crate::seifert::BrieskornSphere::new(p, q, third, Sign::Plus)
        .map_err(|_| ObstructionError::InvalidKnot(p, q))?;
    let sphere_name = sphere.base_name();
    let mut boundary = vec![BoundaryComponent::integral_sphere(&sphere_name, Sign::Plus)];
    for order in [p, q, third] {
        boundary.push(BoundaryComponent {
            name: format!("lens({})", order),
            orientation: Sign::Plus,
            kind: ComponentKind::RationalHomologySphere,
            tau_lower: Some(TauBound::new(
                Rational::new(BigInt::from(1), BigInt::from(order)),
                TauBoundKind::LensInput,
            )),
            e_restriction_trivial: false,
        });
    }
    let e_square = Rational::new(
        BigInt::from(-1),
        BigInt::from(p) * BigInt::from(q) * BigInt::from(third),
    );
    let partition = CsPartition {
        gl: vec![sphere_name],
        cs: boundary[1..].iter().map(|c| c.name.clone()).collect(),
    };
    Block::new(
        boundary,
        e_square,
        BlockFlags {
            negative_definite: true,
            h1_mod2_zero: true,
            property_i: true,
        },
        Some(partition),
        vec![format!("odd-parity block over Sigma({p},{q},{})", third)],
    )
}

/// The doubling cobordism for a torus knot: a negative definite block with
/// `H₁ = 0` whose boundary is `-Σ(D(T(p,q)))` together with the
/// `1/2`-surgery `-Σ(p,q,2pq-1)`.
pub fn doubling_cobordism_block(p: i64, q: i64) -> Result<Block, ObstructionError> {
    doubling_cobordism_block_for(&KnotDescriptor::positive_torus(p, q), p, q)
}

/// [`doubling_cobordism_block`] generalized over an explicit knot
/// descriptor: rejects knots not flagged positively-unknottable.
pub fn doubling_cobordism_block_for(
    knot: &KnotDescriptor,
    p: i64,
    q: i64,
) -> Result<Block, ObstructionError> {
    check_knot(p, q)?;
    if !knot.positively_unknottable {
        return Err(ObstructionError::NotPositivelyUnknottable(
            knot.label.clone(),
        ));
    }
    let surgered = surgery_to_brieskorn(p, q, 2, Sign::Plus)
        .map_err(|_| ObstructionError::InvalidKnot(p, q))?;
    let cover_name = format!("Sigma(D({}))", knot.label);
    let cover = BoundaryComponent::integral_sphere(cover_name, Sign::Minus).with_tau(
        tau_lower_whitehead_cover(p, q, Sign::Minus)
            .map_err(|_| ObstructionError::InvalidKnot(p, q))?,
    );
    let sphere = BoundaryComponent::integral_sphere(surgered.base_name(), surgered.orientation());
    let partition = CsPartition {
        gl: vec![cover.name.clone(), sphere.name.clone()],
        cs: vec![],
    };
    let names = vec![cover, sphere];
    Block::new(
        names,
        Rational::zero(),
        BlockFlags {
            negative_definite: true,
            h1_mod2_zero: true,
            property_i: false,
        },
        Some(partition),
        vec![format!("doubling cobordism for {}", knot.label)],
    )
}

/// Glues `q` to `w` along the integral homology sphere named `y`, which
/// must appear with opposite orientations in the two blocks. The glued
/// class extends `w`'s class by zero, so the energy is unchanged and the
/// odd-parity property persists.
pub fn glue(w: &Block, q: &Block, y: &str) -> Result<Block, ObstructionError> {
    let wy = w
        .component(y)
        .ok_or_else(|| ObstructionError::GlueComponentMissing(y.to_string()))?;
    let qy = q
        .component(y)
        .ok_or_else(|| ObstructionError::GlueComponentMissing(y.to_string()))?;
    if wy.kind != ComponentKind::IntegralHomologySphere
        || qy.kind != ComponentKind::IntegralHomologySphere
    {
        return Err(ObstructionError::NotHomologySphere(y.to_string()));
    }
    if wy.orientation == qy.orientation {
        return Err(ObstructionError::GlueComponentMissing(y.to_string()));
    }
    if !(q.flags.negative_definite && q.flags.h1_mod2_zero) {
        return Err(ObstructionError::GlueFlagsMissing);
    }
    for block in [w, q] {
        if let Some(p) = block.partition() {
            if !p.gl.iter().any(|n| n == y) {
                return Err(ObstructionError::NotInGluePartition(y.to_string()));
            }
        }
    }

    let mut boundary: Vec<BoundaryComponent> = Vec::new();
    for c in w.boundary().iter().chain(q.boundary().iter()) {
        if c.name != y {
            boundary.push(c.clone());
        }
    }

    let partition = match (w.partition(), q.partition()) {
        (Some(pw), Some(pq)) => {
            let gl = pw
                .gl
                .iter()
                .chain(pq.gl.iter())
                .filter(|n| n.as_str() != y)
                .cloned()
                .collect();
            let cs = pw.cs.iter().chain(pq.cs.iter()).cloned().collect();
            Some(CsPartition { gl, cs })
        }
        _ => None,
    };

    let mut provenance = w.provenance.clone();
    provenance.extend(q.provenance.iter().cloned());
    provenance.push(format!("glued along {}", y));

    Block::new(
        boundary,
        w.e_square.clone(),
        BlockFlags {
            negative_definite: w.flags.negative_definite && q.flags.negative_definite,
            h1_mod2_zero: w.flags.h1_mod2_zero && q.flags.h1_mod2_zero,
            property_i: w.flags.property_i,
        },
        partition,
        provenance,
    )
}

/// The composite block for the doubled torus knot `D(T(p,q))`: the
/// truncated orbifold block at surgery level 2 glued to the doubling
/// cobordism along `Σ(p,q,2pq-1)`. Its boundary is `-Σ(D(T(p,q)))` plus
/// three lens spaces, its energy is `1/(pq(2pq-1))`, and its partition
/// (valid for the characteristic class and for zero) puts exactly the
/// doubled cover in the glue side.
pub fn whitehead_block(p: i64, q: i64) -> Result<Block, ObstructionError> {
    let orbifold = brieskorn_block(p, q, 2)?;
    let doubling = doubling_cobordism_block(p, q)?;
    let seam = crate::seifert::BrieskornSphere::new(p, q, 2 * p * q - 1, Sign::Plus)
        .map_err(|_| ObstructionError::InvalidKnot(p, q))?
        .base_name();
    let mut block = glue(&orbifold, &doubling, &seam)?;
    block
        .provenance
        .push("partition valid for both the characteristic class and zero".into());
    Ok(block)
}

/// A hypothetical compact 4-manifold with the mod-2 homology of a ball (or
/// punctured ball), bounding the named integral homology sphere. Vacuously
/// negative definite. This is the object whose existence the contradiction
/// machinery refutes.
pub fn z2_ball_block(boundary_name: &str, orientation: Sign) -> Block {
    Block::new(
        vec![BoundaryComponent::integral_sphere(
            boundary_name,
            orientation,
        )],
        Rational::zero(),
        BlockFlags {
            negative_definite: true,
            h1_mod2_zero: true,
            property_i: false,
        },
        Some(CsPartition {
            gl: vec![boundary_name.to_string()],
            cs: vec![],
        }),
        vec!["hypothetical Z/2-homology ball".into()],
    )
    .expect("ball block data is always consistent")
}

/// Greedy cs-partition of a block's boundary at the given bound: every
/// component whose τ bound strictly exceeds `bound` goes to the cs side;
/// the remainder must all be integral homology spheres, otherwise the
/// failure names the first offender. Failure is a value, not an error.
#[allow(clippy::result_large_err)]
pub fn check_cs_partition(b: &Block, bound: &Rational) -> Result<CsPartition, PartitionFailure> {
    let mut gl = Vec::new();
    let mut cs = Vec::new();
    for c in b.boundary() {
        let clears = c
            .tau_lower
            .as_ref()
            .map(|t| t.value() > bound)
            .unwrap_or(false);
        if clears {
            cs.push(c.name.clone());
        } else if c.kind == ComponentKind::IntegralHomologySphere {
            gl.push(c.name.clone());
        } else {
            return Err(PartitionFailure {
                offender: c.name.clone(),
                tau_lower: c.tau_lower.as_ref().map(|t| t.value().clone()),
                bound: bound.clone(),
            });
        }
    }
    Ok(CsPartition { gl, cs })
}

/// True exactly when the assembled configuration is impossible: the block
/// has the odd-parity property, its energy lies strictly between 0 and 4,
/// and at that bound the whole boundary sits on the cs side (`∂_gl`
/// empty) — so the moduli space would be compact with an odd number of
/// singular points, contradicting the even-parity compactness count.
pub fn contradiction_check(b: &Block) -> bool {
    if !b.flags().property_i {
        return false;
    }
    let energy = b.energy();
    if !(energy > Rational::zero() && energy < rat_int(4)) {
        return false;
    }
    matches!(check_cs_partition(b, &energy), Ok(p) if p.gl.is_empty())
}

/// Leading term of the index formula: `-2e² - 3 + ½·Σ(3 - h - ρ)` over the
/// supplied boundary corrections. Components with trivial restriction
/// contribute nothing and are simply not passed.
pub fn index_leading(e_square: &Rational, corrections: &[(Rational, Rational)]) -> Rational {
    let mut sum = Rational::zero();
    for (h, rho) in corrections {
        sum += rat_int(3) - h - rho;
    }
    rat_int(-2) * e_square - rat_int(3) + Rational::new(BigInt::from(1), BigInt::from(2)) * sum
}

/// Index leading term for a block, reading corrections per component name.
/// Every component with a nontrivial restriction must have one.
pub fn block_index_leading(
    b: &Block,
    corrections: &BTreeMap<String, (Rational, Rational)>,
) -> Result<Rational, ObstructionError> {
    let mut used = Vec::new();
    for c in b.boundary() {
        if !c.e_restriction_trivial {
            match corrections.get(&c.name) {
                Some(pair) => used.push(pair.clone()),
                None => return Err(ObstructionError::MissingCorrection(c.name.clone())),
            }
        }
    }
    Ok(index_leading(b.e_square(), &used))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rat;

    #[test]
    fn brieskorn_block_data() {
        let b = brieskorn_block(2, 3, 2).unwrap();
        assert_eq!(b.e_square(), &rat(-1, 66));
        let taus: Vec<Rational> = b
            .boundary()
            .iter()
            .filter_map(|c| c.tau_lower.as_ref().map(|t| t.value().clone()))
            .collect();
        assert_eq!(taus, vec![rat(1, 2), rat(1, 3), rat(1, 11)]);
        assert!(b.flags().property_i);
        // energy strictly below every lens bound
        for t in taus {
            assert!(b.energy() < t);
        }

        assert_eq!(brieskorn_block(2, 7, 2).unwrap().e_square(), &rat(-1, 378));
        assert!(brieskorn_block(2, 4, 2).is_err());
        assert!(brieskorn_block(2, 3, 0).is_err());
    }

    #[test]
    fn doubling_block_data() {
        let b = doubling_cobordism_block(2, 3).unwrap();
        let names: Vec<&str> = b.boundary().iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, vec!["Sigma(D(T(2,3)))", "Sigma(2,3,11)"]);
        assert!(b.boundary().iter().all(
            |c| c.orientation == Sign::Minus && c.kind == ComponentKind::IntegralHomologySphere
        ));
        assert!(b.flags().negative_definite && b.flags().h1_mod2_zero);
        assert!(!b.flags().property_i);
        assert!(b.e_square().is_zero());

        let b = doubling_cobordism_block(2, 7).unwrap();
        assert!(b.component("Sigma(2,7,27)").is_some());
    }

    #[test]
    fn doubling_block_needs_the_unknotting_flag() {
        let knot = KnotDescriptor {
            label: "mystery".into(),
            positively_unknottable: false,
        };
        assert!(matches!(
            doubling_cobordism_block_for(&knot, 2, 3),
            Err(ObstructionError::NotPositivelyUnknottable(_))
        ));
    }

    #[test]
    fn whitehead_block_is_the_glued_composite() {
        let b = whitehead_block(2, 3).unwrap();
        assert_eq!(b.e_square(), &rat(-1, 66));
        assert!(b.flags().property_i);
        let names: Vec<&str> = b.boundary().iter().map(|c| c.name.as_str()).collect();
        assert_eq!(
            names,
            vec!["lens(2)", "lens(3)", "lens(11)", "Sigma(D(T(2,3)))"]
        );
        let p = b.partition().unwrap();
        assert_eq!(p.gl, vec!["Sigma(D(T(2,3)))"]);
        assert_eq!(p.cs.len(), 3);

        assert_eq!(whitehead_block(2, 7).unwrap().e_square(), &rat(-1, 378));
    }

    #[test]
    fn glue_rejects_rational_sphere_seams_and_bad_flags() {
        let w = brieskorn_block(2, 3, 2).unwrap();
        let q = doubling_cobordism_block(2, 3).unwrap();
        assert!(matches!(
            glue(&w, &q, "lens(2)"),
            Err(ObstructionError::GlueComponentMissing(_) | ObstructionError::NotHomologySphere(_))
        ));

        // same-orientation seam is rejected (w holds +Sigma(2,3,11))
        let ball = z2_ball_block("Sigma(2,3,11)", Sign::Plus);
        assert!(glue(&w, &ball, "Sigma(2,3,11)").is_err());

        // flag failure: a "ball" that is not known definite
        let bad = Block::new(
            vec![BoundaryComponent::integral_sphere(
                "Sigma(2,3,11)",
                Sign::Minus,
            )],
            Rational::zero(),
            BlockFlags {
                negative_definite: false,
                h1_mod2_zero: true,
                property_i: false,
            },
            None,
            vec![],
        )
        .unwrap();
        assert!(matches!(
            glue(&w, &bad, "Sigma(2,3,11)"),
            Err(ObstructionError::GlueFlagsMissing)
        ));
    }

    #[test]
    fn glue_preserves_energy_exactly() {
        let w = brieskorn_block(2, 3, 2).unwrap();
        let q = doubling_cobordism_block(2, 3).unwrap();
        let x = glue(&w, &q, "Sigma(2,3,11)").unwrap();
        assert_eq!(x.e_square(), w.e_square());
        assert_eq!(x.p1(), rat(1, 66));
    }

    #[test]
    fn glue_order_along_disjoint_seams_is_immaterial() {
        // two doubling cobordisms hanging off one central block
        let w = brieskorn_block(2, 3, 2).unwrap();
        let q1 = doubling_cobordism_block(2, 3).unwrap();
        // a synthetic second seam block with the opposite orientation
        let q2 = z2_ball_block("Sigma(D(T(2,3)))", Sign::Plus);

        let a = glue(
            &glue(&w, &q1, "Sigma(2,3,11)").unwrap(),
            &q2,
            "Sigma(D(T(2,3)))",
        )
        .unwrap();
        let b_first = glue(&q1, &q2, "Sigma(D(T(2,3)))").unwrap();
        let b = glue(&w, &b_first, "Sigma(2,3,11)").unwrap();
        let mut na: Vec<String> = a.boundary().iter().map(|c| c.oriented_name()).collect();
        let mut nb: Vec<String> = b.boundary().iter().map(|c| c.oriented_name()).collect();
        na.sort();
        nb.sort();
        assert_eq!(na, nb);
        assert_eq!(a.e_square(), b.e_square());
    }

    #[test]
    fn partition_of_whitehead_block() {
        let b = whitehead_block(2, 3).unwrap();
        let p = check_cs_partition(&b, &b.energy()).unwrap();
        assert_eq!(p.gl, vec!["Sigma(D(T(2,3)))"]);
        assert_eq!(p.cs, vec!["lens(2)", "lens(3)", "lens(11)"]);
    }

    #[test]
    fn partition_strictness_names_the_offender() {
        let b = whitehead_block(2, 3).unwrap();
        // at bound 1/2 the lens(2) component fails the strict inequality
        let fail = check_cs_partition(&b, &rat(1, 2)).unwrap_err();
        assert_eq!(fail.offender, "lens(2)");
        assert_eq!(fail.tau_lower, Some(rat(1, 2)));
    }

    #[test]
    fn partition_of_empty_boundary_is_valid() {
        let b = Block::new(
            vec![],
            rat(-1, 66),
            BlockFlags {
                negative_definite: true,
                h1_mod2_zero: true,
                property_i: true,
            },
            None,
            vec![],
        )
        .unwrap();
        let p = check_cs_partition(&b, &rat(1, 66)).unwrap();
        assert!(p.gl.is_empty() && p.cs.is_empty());
    }

    #[test]
    fn contradiction_fires_only_after_capping() {
        let w = whitehead_block(2, 3).unwrap();
        assert!(!contradiction_check(&w));

        let ball = z2_ball_block("Sigma(D(T(2,3)))", Sign::Plus);
        assert!(!contradiction_check(&ball));

        let capped = glue(&w, &ball, "Sigma(D(T(2,3)))").unwrap();
        assert!(contradiction_check(&capped));
    }

    #[test]
    fn index_leading_values() {
        assert_eq!(index_leading(&rat(0, 1), &[]), rat(-3, 1));
        // Σ(3 - h - ρ) = 6, e² = -1: -2(-1) - 3 + 3 = 2
        let corrections = vec![(rat(0, 1), rat(0, 1)), (rat(0, 1), rat(0, 1))];
        assert_eq!(index_leading(&rat(-1, 1), &corrections), rat(2, 1));
    }

    #[test]
    fn block_index_requires_corrections_for_nontrivial_restrictions() {
        let b = brieskorn_block(2, 3, 2).unwrap();
        let err = block_index_leading(&b, &BTreeMap::new()).unwrap_err();
        assert!(matches!(err, ObstructionError::MissingCorrection(_)));

        let mut corrections = BTreeMap::new();
        for c in b.boundary() {
            corrections.insert(c.name.clone(), (rat(3, 1), rat(0, 1)));
        }
        // each lens contributes 3 - 3 - 0 = 0, leaving -2e^2 - 3
        let got = block_index_leading(&b, &corrections).unwrap();
        assert_eq!(got, rat(2, 66) - rat(3, 1));
    }

    #[test]
    fn property_flag_validation() {
        // energy >= 2 cannot carry the odd-parity property
        assert!(Block::new(
            vec![],
            rat(-2, 1),
            BlockFlags {
                negative_definite: true,
                h1_mod2_zero: true,
                property_i: true
            },
            None,
            vec![],
        )
        .is_err());
        assert!(Block::new(
            vec![],
            rat(-1, 2),
            BlockFlags {
                negative_definite: false,
                h1_mod2_zero: true,
                property_i: true
            },
            None,
            vec![],
        )
        .is_err());
    }

    #[test]
    fn whitehead_partition_holds_for_all_small_pq() {
        for p in 2i64..=20 {
            for q in 2i64..=250 {
                if num_integer::gcd(p, q) != 1 || p * q > 500 || p == q {
                    continue;
                }
                let b = whitehead_block(p, q).unwrap();
                assert_eq!(
                    b.e_square(),
                    &Rational::new(
                        BigInt::from(-1),
                        BigInt::from(p) * BigInt::from(q) * BigInt::from(2 * p * q - 1)
                    )
                );
                let part = check_cs_partition(&b, &b.energy()).unwrap();
                assert_eq!(part.gl, vec![format!("Sigma(D(T({},{})))", p, q)]);
                // energy below every lens bound
                for c in b.boundary() {
                    if let Some(t) = &c.tau_lower {
                        if c.kind == ComponentKind::RationalHomologySphere {
                            assert!(b.energy() < *t.value());
                        }
                    }
                }
            }
        }
    }
}
