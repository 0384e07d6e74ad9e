//! Damped Gauss-Newton search for relator representations.
//!
//! The state is the 8 real components of the meridian pair, renormalized to
//! the unit sphere after every step. The residual is the relator value
//! minus 1; when a nonabelian solution is requested, a hinge barrier row
//! rewards commutator norm until the iterate is clear of the abelian
//! locus, and a final polish phase drops the barrier so the returned
//! residual measures the relator alone.

use super::{
    relator_word, GroupWord, LinkRep, Quat, QuatrepError, EPS_ABELIAN, EPS_NORM, MAX_ITERS, MU1,
    MU2,
};

/// Tunables for [`solve_relator`]. The defaults match the crate-level
/// tolerances.
#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    /// Success threshold for the relator residual.
    pub tol: f64,
    /// Total iteration budget across both phases.
    pub max_iters: u32,
    /// Commutator-distance radius inside which the barrier is active.
    pub barrier_threshold: f64,
    /// Weight of the barrier row.
    pub barrier_weight: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: super::EPS_REP,
            max_iters: MAX_ITERS,
            barrier_threshold: 0.75,
            barrier_weight: 0.5,
        }
    }
}

/// Result of a solver run. Failure to converge is a value, not a fault.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome {
    Converged(LinkRep),
    NoConvergence {
        final_residual: f64,
        iterations: u32,
    },
}

fn pack(mu1: Quat, mu2: Quat) -> [f64; 8] {
    [mu1.w, mu1.x, mu1.y, mu1.z, mu2.w, mu2.x, mu2.y, mu2.z]
}

fn unpack(x: &[f64; 8]) -> (Quat, Quat) {
    (
        Quat::new(x[0], x[1], x[2], x[3]),
        Quat::new(x[4], x[5], x[6], x[7]),
    )
}

fn renormalize(x: &mut [f64; 8]) {
    let (m1, m2) = unpack(x);
    let (m1, m2) = (m1.normalized(), m2.normalized());
    *x = pack(m1, m2);
}

const BASIS: [Quat; 4] = [
    Quat {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    },
    Quat {
        w: 0.0,
        x: 1.0,
        y: 0.0,
        z: 0.0,
    },
    Quat {
        w: 0.0,
        x: 0.0,
        y: 1.0,
        z: 0.0,
    },
    Quat {
        w: 0.0,
        x: 0.0,
        y: 0.0,
        z: 1.0,
    },
];

fn quat_row(q: Quat) -> [f64; 4] {
    [q.w, q.x, q.y, q.z]
}

/// Value of a word at `(μ₁, μ₂)` together with the 4×8 Jacobian with
/// respect to the raw components, by the product rule over prefix and
/// suffix partial products. Inverse letters differentiate through the
/// conjugation, which is linear.
fn word_value_jacobian(word: &GroupWord, mu1: Quat, mu2: Quat) -> (Quat, [[f64; 8]; 4]) {
    let letters = word.letters();
    let n = letters.len();
    let value_of = |&(g, e): &(usize, i8)| -> Quat {
        let q = if g == MU1 { mu1 } else { mu2 };
        if e == 1 {
            q
        } else {
            q.conj()
        }
    };

    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(Quat::ONE);
    for l in letters {
        let last = *prefix.last().expect("nonempty");
        prefix.push(last * value_of(l));
    }
    let mut suffix = vec![Quat::ONE; n + 1];
    for i in (0..n).rev() {
        suffix[i] = value_of(&letters[i]) * suffix[i + 1];
    }

    let mut jac = [[0.0f64; 8]; 4];
    for (i, &(g, e)) in letters.iter().enumerate() {
        for (c, &basis) in BASIS.iter().enumerate() {
            let dm = if e == 1 { basis } else { basis.conj() };
            let contrib = prefix[i] * dm * suffix[i + 1];
            let col = 4 * g + c;
            let row = quat_row(contrib);
            for r in 0..4 {
                jac[r][col] += row[r];
            }
        }
    }
    (prefix[n], jac)
}

/// Residual rows and Jacobian at a state: the four relator components and,
/// when steering, one hinge-barrier row that is zero once the commutator is
/// at least `threshold` away from 1.
fn residual_system(
    x: &[f64; 8],
    relator: &GroupWord,
    comm: &GroupWord,
    barrier: Option<(f64, f64)>,
) -> (Vec<f64>, Vec<[f64; 8]>) {
    let (mu1, mu2) = unpack(x);
    let (rel, rel_jac) = word_value_jacobian(relator, mu1, mu2);
    let mut rows = vec![rel.w - 1.0, rel.x, rel.y, rel.z];
    let mut jac: Vec<[f64; 8]> = rel_jac.to_vec();

    if let Some((threshold, weight)) = barrier {
        let (cq, cq_jac) = word_value_jacobian(comm, mu1, mu2);
        let v = [cq.w - 1.0, cq.x, cq.y, cq.z];
        let c = (v.iter().map(|t| t * t).sum::<f64>()).sqrt();
        if c < threshold {
            rows.push(weight * (threshold - c));
            let mut grad = [0.0f64; 8];
            if c > 1e-9 {
                for col in 0..8 {
                    let dc: f64 = (0..4).map(|r| v[r] * cq_jac[r][col]).sum::<f64>() / c;
                    grad[col] = -weight * dc;
                }
            }
            jac.push(grad);
        }
    }
    (rows, jac)
}

fn sum_sq(rows: &[f64]) -> f64 {
    rows.iter().map(|r| r * r).sum()
}

/// Solves the damped normal equations `(JᵀJ + λI)δ = -JᵀF` by Gaussian
/// elimination with partial pivoting.
#[allow(clippy::needless_range_loop)]
fn lm_step(rows: &[f64], jac: &[[f64; 8]], lambda: f64) -> Option<[f64; 8]> {
    let mut a = [[0.0f64; 9]; 8];
    for i in 0..8 {
        for j in 0..8 {
            let mut s = 0.0;
            for (r, row) in jac.iter().enumerate() {
                s += row[i] * jac[r][j];
            }
            a[i][j] = s;
        }
        a[i][i] += lambda;
        let mut b = 0.0;
        for (r, row) in jac.iter().enumerate() {
            b -= row[i] * rows[r];
        }
        a[i][8] = b;
    }
    // forward elimination
    for col in 0..8 {
        let mut piv = col;
        for r in (col + 1)..8 {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        for r in (col + 1)..8 {
            let f = a[r][col] / a[col][col];
            for c in col..9 {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    let mut delta = [0.0f64; 8];
    for col in (0..8).rev() {
        let mut s = a[col][8];
        for c in (col + 1)..8 {
            s -= a[col][c] * delta[c];
        }
        delta[col] = s / a[col][col];
    }
    if delta.iter().any(|d| !d.is_finite()) {
        None
    } else {
        Some(delta)
    }
}

/// One Levenberg-Marquardt run. Returns the iterations consumed.
fn lm_run(
    x: &mut [f64; 8],
    relator: &GroupWord,
    comm: &GroupWord,
    barrier: Option<(f64, f64)>,
    budget: u32,
    target: f64,
) -> u32 {
    let mut lambda = 1e-3;
    let mut used = 0;
    while used < budget {
        let (rows, jac) = residual_system(x, relator, comm, barrier);
        let err = sum_sq(&rows).sqrt();
        if err < target {
            break;
        }
        let Some(delta) = lm_step(&rows, &jac, lambda) else {
            break;
        };
        let mut candidate = *x;
        for i in 0..8 {
            candidate[i] += delta[i];
        }
        renormalize(&mut candidate);
        let (new_rows, _) = residual_system(&candidate, relator, comm, barrier);
        used += 1;
        if sum_sq(&new_rows) < sum_sq(&rows) {
            *x = candidate;
            lambda = (lambda / 3.0).max(1e-12);
        } else {
            lambda *= 4.0;
            if lambda > 1e14 {
                break;
            }
        }
    }
    used
}

/// Searches for a representation of the link-group relator from the given
/// seed pair. With `want_nonabelian`, a solution that collapses onto the
/// abelian locus is reported as no-convergence rather than success.
///
/// Errors only on an invalid (non-unit) seed; running out of iterations is
/// an outcome value.
pub fn solve_relator(
    seed: (Quat, Quat),
    want_nonabelian: bool,
    tol: f64,
) -> Result<SolveOutcome, QuatrepError> {
    solve_relator_with(
        seed,
        want_nonabelian,
        SolverConfig {
            tol,
            ..SolverConfig::default()
        },
    )
}

/// [`solve_relator`] with explicit configuration.
pub fn solve_relator_with(
    seed: (Quat, Quat),
    want_nonabelian: bool,
    cfg: SolverConfig,
) -> Result<SolveOutcome, QuatrepError> {
    for q in [seed.0, seed.1] {
        if !q.is_unit(EPS_NORM) {
            return Err(QuatrepError::InvalidSeed((q.norm() - 1.0).abs()));
        }
    }
    let relator = relator_word();
    let comm = GroupWord::new(vec![(MU1, 1), (MU2, 1), (MU1, -1), (MU2, -1)]);

    let mut x = pack(seed.0, seed.1);
    renormalize(&mut x);

    let steering = if want_nonabelian {
        Some((cfg.barrier_threshold, cfg.barrier_weight))
    } else {
        None
    };
    let steer_budget = if want_nonabelian {
        cfg.max_iters * 4 / 5
    } else {
        cfg.max_iters
    };
    let mut iters = lm_run(&mut x, &relator, &comm, steering, steer_budget, 1e-11);
    // polish without the barrier so the reported residual is the relator's
    iters += lm_run(&mut x, &relator, &comm, None, cfg.max_iters - iters, 1e-14);

    let (mu1, mu2) = unpack(&x);
    let rep = LinkRep::new(mu1, mu2);
    let nonabelian_ok = !want_nonabelian || rep.commutator_witness() > EPS_ABELIAN;
    if rep.residual < cfg.tol && nonabelian_ok {
        Ok(SolveOutcome::Converged(rep))
    } else {
        Ok(SolveOutcome::NoConvergence {
            final_residual: rep.residual,
            iterations: iters,
        })
    }
}

/// Uniform random point of the unit 3-sphere: four Gaussian samples
/// (Box-Muller) normalized to length one. Deterministic given the RNG.
pub fn random_unit_quaternion<R: rand::Rng + ?Sized>(rng: &mut R) -> Quat {
    loop {
        let mut g = [0.0f64; 4];
        for pair in 0..2 {
            let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            let u2: f64 = rng.gen();
            let r = (-2.0 * u1.ln()).sqrt();
            let a = 2.0 * std::f64::consts::PI * u2;
            g[2 * pair] = r * a.cos();
            g[2 * pair + 1] = r * a.sin();
        }
        let n = g.iter().map(|t| t * t).sum::<f64>().sqrt();
        if n > 1e-6 {
            return Quat::new(g[0] / n, g[1] / n, g[2] / n, g[3] / n);
        }
    }
}
