//! Tikhonov regularization with the penalty `lambda^2 ||x||^2` and the
//! discrepancy principle for choosing `lambda`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::lu::LuFactors;
use crate::linalg::{norm2, solve_linear, DenseMatrix};

/// Search interval for the regularization parameter.
pub const LAMBDA_MIN: f64 = 1e-12;
pub const LAMBDA_MAX: f64 = 1e3;
/// Accepted residual window is `[delta, DISCREPANCY_SLACK * delta]`.
pub const DISCREPANCY_SLACK: f64 = 1.05;
const MAX_BISECTIONS: usize = 200;

/// Minimizer of `||A x - b||^2 + lambda^2 ||x||^2`.
///
/// Solves the normal equations `(A^T A + lambda^2 I) x = A^T b`. At
/// `lambda = 0` with square `A` this is plain [`solve_linear`]. For
/// `lambda > 0` the normal matrix is positive definite by construction, so only
/// an exactly zero pivot is treated as singular.
pub fn tikhonov_solve(a: &DenseMatrix, b: &[f64], lambda: f64) -> Result<Vec<f64>> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParams(format!("lambda must be finite and >= 0, got {lambda}")));
    }
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    if lambda == 0.0 && a.is_square() {
        return solve_linear(a, b);
    }
    let at = a.transpose();
    let mut normal = at.matmul(a)?;
    let l2 = lambda * lambda;
    for i in 0..normal.rows() {
        normal[(i, i)] += l2;
    }
    let rhs = at.matvec(b)?;
    if lambda == 0.0 {
        solve_linear(&normal, &rhs)
    } else {
        LuFactors::factor(&normal, 0.0)?.solve(&rhs)
    }
}

/// Result of [`discrepancy_select`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyOutcome {
    pub lambda: f64,
    pub x: Vec<f64>,
    pub residual: f64,
    /// The residual already exceeded the window at the smallest `lambda`;
    /// `x` is the solution at [`LAMBDA_MIN`].
    pub bracket_failure: bool,
    /// The residual never reached `delta` inside the search interval; `x` is
    /// the solution at [`LAMBDA_MAX`].
    pub saturated: bool,
}

/// Chooses `lambda` so that `||A x_lambda - b||` lands in
/// `[delta, 1.05 delta]`, by bisection on `log lambda` over `[1e-12, 1e3]`.
pub fn discrepancy_select(a: &DenseMatrix, b: &[f64], delta: f64) -> Result<DiscrepancyOutcome> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidParams(format!("delta must be finite and positive, got {delta}")));
    }
    let b_norm = norm2(b);
    if delta >= b_norm {
        return Err(Error::DeltaTooLarge { delta, rhs_norm: b_norm });
    }
    let upper = DISCREPANCY_SLACK * delta;

    let eval = |lambda: f64| -> Result<(Vec<f64>, f64)> {
        let x = tikhonov_solve(a, b, lambda)?;
        let ax = a.matvec(&x)?;
        let res: Vec<f64> = ax.iter().zip(b).map(|(u, v)| u - v).collect();
        Ok((x, norm2(&res)))
    };
    let outcome = |lambda: f64, x: Vec<f64>, residual: f64| DiscrepancyOutcome {
        lambda,
        x,
        residual,
        bracket_failure: false,
        saturated: false,
    };

    let (x_lo, res_lo) = eval(LAMBDA_MIN)?;
    if res_lo > upper {
        return Ok(DiscrepancyOutcome { bracket_failure: true, ..outcome(LAMBDA_MIN, x_lo, res_lo) });
    }
    if res_lo >= delta {
        return Ok(outcome(LAMBDA_MIN, x_lo, res_lo));
    }
    let (x_hi, res_hi) = eval(LAMBDA_MAX)?;
    if res_hi < delta {
        return Ok(DiscrepancyOutcome { saturated: true, ..outcome(LAMBDA_MAX, x_hi, res_hi) });
    }
    if res_hi <= upper {
        return Ok(outcome(LAMBDA_MAX, x_hi, res_hi));
    }

    let (mut lo, mut hi) = (LAMBDA_MIN.ln(), LAMBDA_MAX.ln());
    let mut best = None;
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let lambda = mid.exp();
        let (x, res) = eval(lambda)?;
        if res < delta {
            lo = mid;
        } else if res > upper {
            hi = mid;
        } else {
            return Ok(outcome(lambda, x, res));
        }
        best = Some((lambda, x, res));
        if hi - lo < 1e-14 {
            break;
        }
    }
    // the window is wide enough that this only happens for pathological input
    let (lambda, x, res) = best.expect("at least one bisection step");
    Ok(outcome(lambda, x, res))
}
