//! Exact-arithmetic and numerical toolkit for an instanton-based
//! knot-concordance obstruction.
//!
//! The crate has five computational layers:
//!
//! - [`exactq`]: unbounded rational and modular arithmetic, Smith normal
//!   form, and CRT — the substrate for everything else.
//! - [`seifert`]: the surgery dictionary for torus knots, enumeration of
//!   flat `SU(2)` connection classes on Brieskorn spheres with their
//!   Chern-Simons invariants, and minimal Chern-Simons (τ) lower bounds.
//! - [`quatrep`]: unit-quaternion model of `SU(2)`, word evaluation in
//!   link-group presentations, and a constrained least-squares solver for
//!   the (2,4)-torus-link relator.
//! - [`obstruction`]: the symbolic cobordism-block calculus — blocks with
//!   cs-partitions, gluing, characteristic-class lattice enumeration, and
//!   the independence certifier.
//! - [`sequences`]: generation and exact verification of torus-knot
//!   sequences satisfying the growth inequality that drives independence.
//!
//! The [`cli`] module exposes all of it as a command-line tool.

pub mod cli;
pub mod exactq;
pub mod obstruction;
pub mod quatrep;
pub mod seifert;
pub mod sequences;

pub use exactq::{CsValue, IntMatrix, Modulus, Rational};
pub use obstruction::{Block, BoundaryComponent, Certificate, Verdict};
pub use seifert::{BrieskornSphere, FlatConnectionClass, Sign, TauBound};
pub use sequences::KnotPair;
