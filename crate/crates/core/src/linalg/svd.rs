use crate::linalg::{dot, DenseMatrix};

const MAX_SWEEPS: usize = 80;

/// Singular values in descending order, by one-sided (Hestenes) Jacobi.
///
/// Column pairs are rotated until they are numerically orthogonal; the
/// singular values are then the column norms. Working on `A` directly instead
/// of on `A^T A` keeps small singular values resolvable down to roughly
/// `eps * ||A||`, which the condition numbers of the recovery systems need.
pub fn singular_values(a: &DenseMatrix) -> Vec<f64> {
    // work on the orientation with at least as many rows as columns
    let work = if a.rows() >= a.cols() { a.clone() } else { a.transpose() };
    let (m, n) = (work.rows(), work.cols());
    if n == 0 {
        return Vec::new();
    }
    // column-major copy
    let mut cols: Vec<Vec<f64>> = (0..n).map(|j| (0..m).map(|i| work[(i, j)]).collect()).collect();

    let tol = f64::EPSILON * m as f64;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = dot(&cols[p], &cols[p]);
                let beta = dot(&cols[q], &cols[q]);
                let gamma = dot(&cols[p], &cols[q]);
                if gamma == 0.0 || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(q);
                let (cp, cq) = (&mut left[p], &mut right[0]);
                for i in 0..m {
                    let x = cp[i];
                    let y = cq[i];
                    cp[i] = c * x - s * y;
                    cq[i] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sv: Vec<f64> = cols.iter().map(|c| crate::linalg::norm2(c)).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Spectral condition number `sigma_max / sigma_min` of a square matrix;
/// `+inf` when `sigma_min < 1e-300`.
pub fn spectral_condition(a: &DenseMatrix) -> f64 {
    assert!(a.is_square(), "condition number needs a square matrix");
    let sv = singular_values(a);
    match (sv.first(), sv.last()) {
        (Some(&max), Some(&min)) if min >= 1e-300 => max / min,
        (Some(_), Some(_)) => f64::INFINITY,
        _ => 1.0,
    }
}
