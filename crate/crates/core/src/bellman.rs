//! Solvers for the discrete stationary Bellman equation `X = A X ⊕ B`.
//!
//! When `A*` exists, `X = A* B` is a solution (since `A* = A A* ⊕ E`) and the
//! least one. For interval data, `𝐀*𝐁 = [A̲* B̲, A̅* B̅]` is the least interval
//! containing every minimal solution `A* B` with `A ∈ 𝐀`, `B ∈ 𝐁`, and both
//! bounds are themselves such solutions. It costs two point solves.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interval::{merge, split, IntervalMatrix};
use crate::matrix::Matrix;
use crate::sample;
use crate::semiring::{Profile, Semiring};

/// Relative tolerance used to declare convergence for non-idempotent instances.
pub const CONVERGENCE_TOL: f64 = 1e-10;

fn check_shapes<S: Semiring>(a: &Matrix<S>, b: &Matrix<S>) -> Result<usize> {
    let n = a.require_square("bellman")?;
    if b.rows() != n {
        return Err(Error::DimensionMismatch {
            op: "bellman",
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    Ok(n)
}

/// Minimal solution `A* B`.
pub fn solve_point<S: Semiring>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Matrix<S>> {
    check_shapes(a, b)?;
    a.closure()?.mul(b)
}

/// Algebraic solution `𝐀*𝐁`, computed separately on lower and upper matrices.
/// Fails if either bound's closure does not exist.
pub fn solve_interval<S: Semiring>(
    a: &IntervalMatrix<S>,
    b: &IntervalMatrix<S>,
) -> Result<IntervalMatrix<S>> {
    check_shapes(a, b)?;
    let (a_lo, a_hi) = split(a);
    let (b_lo, b_hi) = split(b);
    let lo = solve_point(&a_lo, &b_lo)?;
    let hi = solve_point(&a_hi, &b_hi)?;
    merge(a.semiring().clone(), &lo, &hi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precondition {
    /// `X₀ ⪯ A* B` was checked.
    Verified,
    Violated,
    /// `A* B` could not be computed, so the start point was not checked.
    Unverified,
}

impl Precondition {
    pub fn key(self) -> &'static str {
        match self {
            Precondition::Verified => "verified",
            Precondition::Violated => "violated",
            Precondition::Unverified => "unverified",
        }
    }
}

#[derive(Clone, Debug)]
pub struct IterationTrace<S: Semiring> {
    /// `X₀, X₁, …`; when `stabilized_at = Some(k)` the last two are `X_k = X_{k+1}`.
    pub iterates: Vec<Matrix<S>>,
    pub stabilized_at: Option<usize>,
    pub converged: bool,
    pub precondition: Precondition,
    pub max_k: usize,
}

impl<S: Semiring> IterationTrace<S> {
    pub fn last(&self) -> &Matrix<S> {
        self.iterates.last().expect("trace holds X0")
    }

    pub fn fixed_point(&self) -> Result<&Matrix<S>> {
        if self.converged {
            Ok(self.last())
        } else {
            Err(Error::MaxIterationsExceeded { max_k: self.max_k })
        }
    }
}

/// Default iteration budget `2n + 2`.
pub fn default_max_k(n: usize) -> usize {
    2 * n + 2
}

/// Runs `X_{k+1} = A X_k ⊕ B` from `x0` for at most `max_k` steps.
///
/// Idempotent iterates are selections, so stabilization is exact equality of
/// consecutive iterates; otherwise convergence within [`CONVERGENCE_TOL`].
/// Works for point and interval matrices alike.
pub fn iterate<S: Semiring>(
    a: &Matrix<S>,
    b: &Matrix<S>,
    x0: &Matrix<S>,
    max_k: Option<usize>,
) -> Result<IterationTrace<S>> {
    let n = check_shapes(a, b)?;
    if x0.rows() != b.rows() || x0.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            op: "iterate",
            left_rows: x0.rows(),
            left_cols: x0.cols(),
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    let max_k = max_k.unwrap_or_else(|| default_max_k(n));
    let precondition = match solve_point(a, b) {
        Ok(sol) if x0.leq(&sol) => Precondition::Verified,
        Ok(_) => Precondition::Violated,
        Err(_) => Precondition::Unverified,
    };
    if precondition != Precondition::Verified {
        log::info!("iterate: start point precondition {}", precondition.key());
    }
    let exact = a.semiring().flags().idempotent;
    let mut iterates = vec![x0.clone()];
    let mut stabilized_at = None;
    for k in 0..max_k {
        let next = a.mul(&iterates[k])?.add(b)?;
        let done = if exact {
            next == iterates[k]
        } else {
            next.approx_eq(&iterates[k], CONVERGENCE_TOL)
        };
        iterates.push(next);
        if done {
            stabilized_at = Some(k);
            break;
        }
    }
    log::debug!("iterate: {} steps, stabilized at {stabilized_at:?}", iterates.len() - 1);
    Ok(IterationTrace {
        iterates,
        stabilized_at,
        converged: stabilized_at.is_some(),
        precondition,
        max_k,
    })
}

/// `ρ(A̅) ⪯ 𝟏`: guarantees the iteration from `X₀ ⪯ 𝐀*𝐁` stabilizes in at
/// most n steps.
pub fn spectral_criterion<S: Semiring>(a: &IntervalMatrix<S>) -> Result<bool> {
    let (_, upper) = split(a);
    let rho = upper.spectral_radius()?;
    let base = a.semiring().base();
    Ok(base.leq(&rho, &base.one()).holds())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport {
    pub samples: usize,
    pub seed: u64,
    /// Sampled minimal solutions falling outside `𝐀*𝐁`.
    pub containment_failures: usize,
    /// Samples whose closure could not be computed.
    pub solve_failures: usize,
    pub first_failure: Option<usize>,
    /// `A̲* B̲` reproduces the lower bound.
    pub lower_attained: bool,
    /// `A̅* B̅` reproduces the upper bound.
    pub upper_attained: bool,
}

impl SampleReport {
    pub fn is_sharp(&self) -> bool {
        self.containment_failures == 0
            && self.solve_failures == 0
            && self.lower_attained
            && self.upper_attained
    }
}

/// Checks `𝐀*𝐁` against minimal solutions of sampled point problems.
///
/// Sample `i` draws from its own ChaCha stream `i` under `seed`, so the report
/// does not depend on how samples are scheduled across threads. Comparisons
/// are exact for idempotent instances and within `1e-9` relative otherwise.
pub fn sample_united_check(
    a: &IntervalMatrix<Profile>,
    b: &IntervalMatrix<Profile>,
    samples: usize,
    seed: u64,
) -> Result<SampleReport> {
    let solution = solve_interval(a, b)?;
    let ext = solution.semiring().clone();
    let tol = if ext.base().flags().idempotent { 0.0 } else { 1e-9 };
    let (a_lo, a_hi) = split(a);
    let (b_lo, b_hi) = split(b);
    let (s_lo, s_hi) = split(&solution);

    let lower_attained = solve_point(&a_lo, &b_lo).is_ok_and(|x| x.approx_eq(&s_lo, tol));
    let upper_attained = solve_point(&a_hi, &b_hi).is_ok_and(|x| x.approx_eq(&s_hi, tol));

    let outcomes: Vec<Option<bool>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let sa = sample::matrix_between(&a_lo, &a_hi, &mut rng);
            let sb = sample::matrix_between(&b_lo, &b_hi, &mut rng);
            let x = solve_point(&sa, &sb).ok()?;
            Some(
                x.data()
                    .iter()
                    .zip(solution.data())
                    .all(|(t, iv)| ext.contains_approx(iv, t, tol)),
            )
        })
        .collect();

    let containment_failures = outcomes.iter().filter(|o| **o == Some(false)).count();
    let solve_failures = outcomes.iter().filter(|o| o.is_none()).count();
    let first_failure = outcomes.iter().position(|o| *o != Some(true));
    Ok(SampleReport {
        samples,
        seed,
        containment_failures,
        solve_failures,
        first_failure,
        lower_attained,
        upper_attained,
    })
}
