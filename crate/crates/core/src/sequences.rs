//! Torus-knot sequences satisfying the growth inequality
//! `p'q'(2p'q'-1) > pq(4pq-1)` between consecutive pairs — the exact
//! arithmetic condition under which the doubled knots are independent.
//!
//! Everything here is unbounded-integer arithmetic; the √2 growth test for
//! the `(n, nk_n - 1)` family is done exactly by squaring.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("p and q must be coprime, got ({0}, {1})")]
    NonCoprime(i64, i64),
    #[error("torus knot parameters must be at least 2, got ({0}, {1})")]
    DegenerateKnot(i64, i64),
    #[error("family bound must be at least 2")]
    FamilyTooShort,
}

/// A torus-knot parameter pair `(p, q)`, coprime with both entries ≥ 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KnotPair {
    p: i64,
    q: i64,
}

impl KnotPair {
    pub fn new(p: i64, q: i64) -> Result<KnotPair, SequenceError> {
        if p < 2 || q < 2 {
            return Err(SequenceError::DegenerateKnot(p, q));
        }
        if p.gcd(&q) != 1 {
            return Err(SequenceError::NonCoprime(p, q));
        }
        Ok(KnotPair { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn pq(&self) -> BigInt {
        BigInt::from(self.p) * BigInt::from(self.q)
    }

    /// `pq(2pq - 1)`: the reciprocal of the energy `-e²` of the block built
    /// on this knot.
    pub fn energy_scale(&self) -> BigInt {
        let pq = self.pq();
        &pq * (BigInt::from(2) * &pq - 1)
    }

    /// `pq(4pq - 1)`: the reciprocal of the τ lower bound of the knot's
    /// doubled branched cover.
    pub fn tau_scale(&self) -> BigInt {
        let pq = self.pq();
        &pq * (BigInt::from(4) * &pq - 1)
    }
}

impl fmt::Display for KnotPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.p, self.q)
    }
}

/// Witness integers of one growth comparison: `lhs > rhs` must hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepWitness {
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub pass: bool,
}

/// Exact check that `next` may follow `prev`:
/// `p'q'(2p'q'-1) > pq(4pq-1)`, with both sides as witnesses.
pub fn admissible_step(prev: &KnotPair, next: &KnotPair) -> StepWitness {
    let lhs = next.energy_scale();
    let rhs = prev.tau_scale();
    let pass = lhs > rhs;
    StepWitness { lhs, rhs, pass }
}

/// The power family `(2, 2ⁿ-1)` for `n = 2..=n_max`, with each consecutive
/// step verified. A failed step is an internal invariant violation and
/// panics; the family satisfies the growth condition for every `n`.
pub fn power_family(n_max: u32) -> Result<Vec<(KnotPair, Option<StepWitness>)>, SequenceError> {
    if n_max < 2 {
        return Err(SequenceError::FamilyTooShort);
    }
    let mut out: Vec<(KnotPair, Option<StepWitness>)> = Vec::new();
    for n in 2..=n_max {
        let q = (BigInt::from(1) << n) - 1;
        let q = i64::try_from(&q).expect("2^n - 1 fits i64 for supported n");
        let pair = KnotPair::new(2, q)?;
        let witness = out.last().map(|(prev, _)| {
            let w = admissible_step(prev, &pair);
            assert!(w.pass, "power family step failed: {} -> {}", prev, pair);
            w
        });
        out.push((pair, witness));
    }
    Ok(out)
}

/// Why a `(n, nk_n - 1)` family construction was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnReason {
    /// `2k² < k'²` fails between this index and its predecessor.
    GrowthTooSlow { prev_k: i64, k: i64 },
    /// The constructed pair is not a valid torus knot.
    InvalidPair(SequenceError),
    /// The consecutive growth inequality fails.
    StepFailed(StepWitness),
}

/// Result of building a `(n, nk_n - 1)` family: either the verified pairs
/// with their step witnesses, or the earliest failing index. Failure is a
/// value, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnFamily {
    Verified(Vec<(KnotPair, Option<StepWitness>)>),
    Failure { index: usize, reason: KnReason },
}

/// Builds pairs `(n, n·kₙ-1)` for `n = n_start, n_start+1, …` over the
/// given multipliers, enforcing the exact growth condition
/// `2·k_{n-1}² < kₙ²` and the consecutive step inequality.
pub fn kn_family(k_values: &[i64], n_start: i64) -> KnFamily {
    let mut out: Vec<(KnotPair, Option<StepWitness>)> = Vec::new();
    for (idx, &k) in k_values.iter().enumerate() {
        if idx > 0 {
            let prev_k = k_values[idx - 1];
            // exact √2 test: 2k² < k'²
            if 2 * (prev_k as i128) * (prev_k as i128) >= (k as i128) * (k as i128) {
                return KnFamily::Failure {
                    index: idx,
                    reason: KnReason::GrowthTooSlow { prev_k, k },
                };
            }
        }
        let n = n_start + idx as i64;
        let pair = match KnotPair::new(n, n * k - 1) {
            Ok(p) => p,
            Err(e) => {
                return KnFamily::Failure {
                    index: idx,
                    reason: KnReason::InvalidPair(e),
                };
            }
        };
        let witness = match out.last() {
            Some((prev, _)) => {
                let w = admissible_step(prev, &pair);
                if !w.pass {
                    return KnFamily::Failure {
                        index: idx,
                        reason: KnReason::StepFailed(w),
                    };
                }
                Some(w)
            }
            None => None,
        };
        out.push((pair, witness));
    }
    KnFamily::Verified(out)
}

/// One pairwise comparison in a chain report, between list indices `j < i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairwiseCheck {
    pub i: usize,
    pub j: usize,
    pub witness: StepWitness,
}

/// Full verification table for a chain of knots: consecutive steps and all
/// pairwise inequalities `pᵢqᵢ(2pᵢqᵢ-1) > pⱼqⱼ(4pⱼqⱼ-1)` for `j < i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    pub consecutive: Vec<StepWitness>,
    pub pairwise: Vec<PairwiseCheck>,
    pub all_consecutive_pass: bool,
    pub all_pairwise_pass: bool,
}

impl ChainReport {
    pub fn all_pass(&self) -> bool {
        self.all_consecutive_pass && self.all_pairwise_pass
    }
}

/// Checks the chain in the order given (no sorting): consecutive steps and
/// the full pairwise table.
pub fn verify_chain(pairs: &[KnotPair]) -> ChainReport {
    let consecutive: Vec<StepWitness> = pairs
        .windows(2)
        .map(|w| admissible_step(&w[0], &w[1]))
        .collect();
    let mut pairwise = Vec::new();
    for i in 1..pairs.len() {
        for j in 0..i {
            pairwise.push(PairwiseCheck {
                i,
                j,
                witness: admissible_step(&pairs[j], &pairs[i]),
            });
        }
    }
    let all_consecutive_pass = consecutive.iter().all(|w| w.pass);
    let all_pairwise_pass = pairwise.iter().all(|c| c.witness.pass);
    ChainReport {
        consecutive,
        pairwise,
        all_consecutive_pass,
        all_pairwise_pass,
    }
}
