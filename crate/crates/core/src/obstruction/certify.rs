//! Independence certificates for families of doubled torus knots.
//!
//! The certified statement reduces to pure integer arithmetic: after
//! sorting the family by `pq(2pq-1)`, every later knot's energy scale must
//! strictly exceed every earlier knot's τ scale,
//! `pᵢqᵢ(2pᵢqᵢ-1) > pⱼqⱼ(4pⱼqⱼ-1)` for `j < i`. Each comparison is
//! recorded with both sides as exact integers so the certificate can be
//! re-verified by anything that can compare decimal strings.

use super::ObstructionError;
use crate::sequences::KnotPair;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Outcome of a certificate run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Certified,
    Rejected,
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let raw = String::deserialize(d)?;
        BigInt::from_str(&raw).map_err(D::Error::custom)
    }
}

/// One pairwise inequality between sorted indices `j < i`:
/// `lhs = pᵢqᵢ(2pᵢqᵢ-1)` must strictly exceed `rhs = pⱼqⱼ(4pⱼqⱼ-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    #[serde(with = "bigint_string")]
    pub lhs: BigInt,
    #[serde(with = "bigint_string")]
    pub rhs: BigInt,
    pub pass: bool,
}

/// Machine-checkable record of an independence run: the sorted family, all
/// pairwise witnesses, and the verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub knots: Vec<KnotPair>,
    pub checks: Vec<PairCheck>,
    pub verdict: Verdict,
    pub failing_pair: Option<(usize, usize)>,
    pub toolkit_version: String,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    /// Pretty JSON document; parsing and re-serializing it is
    /// byte-identical.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization cannot fail")
    }

    pub fn from_json(doc: &str) -> Result<Certificate, serde_json::Error> {
        serde_json::from_str(doc)
    }
}

/// Builds the independence certificate for a family of torus-knot pairs.
/// The input order is immaterial: knots are sorted ascending by
/// `pq(2pq-1)` before the pairwise table is built. Exact duplicates are
/// rejected.
pub fn certify_independence(knots: &[(i64, i64)]) -> Result<Certificate, ObstructionError> {
    let mut pairs = Vec::with_capacity(knots.len());
    for &(p, q) in knots {
        let pair = KnotPair::new(p, q).map_err(|_| ObstructionError::InvalidKnot(p, q))?;
        if pairs.contains(&pair) {
            return Err(ObstructionError::DuplicateKnot(p, q));
        }
        pairs.push(pair);
    }
    pairs.sort_by(|a, b| a.energy_scale().cmp(&b.energy_scale()).then(a.cmp(b)));

    let mut checks = Vec::new();
    let mut failing_pair = None;
    for i in 1..pairs.len() {
        for j in 0..i {
            let lhs = pairs[i].energy_scale();
            let rhs = pairs[j].tau_scale();
            let pass = lhs > rhs;
            if !pass && failing_pair.is_none() {
                failing_pair = Some((i, j));
            }
            checks.push(PairCheck {
                i,
                j,
                lhs,
                rhs,
                pass,
            });
        }
    }
    let verdict = if failing_pair.is_none() {
        Verdict::Certified
    } else {
        Verdict::Rejected
    };
    Ok(Certificate {
        knots: pairs,
        checks,
        verdict,
        failing_pair,
        toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
    })
}
