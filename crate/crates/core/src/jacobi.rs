//! Cyclic Jacobi eigenvalue iteration for dense real symmetric matrices.

use thiserror::Error;

/// Sweep cap; cyclic Jacobi converges quadratically, so hitting it means the
/// input is badly scaled.
pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JacobiError {
    #[error("matrix is not square: {len} entries for dimension {dim}")]
    NotSquare { dim: usize, len: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("matrix has a non-finite entry")]
    NonFinite,
    #[error("no convergence after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            sum += 2.0 * a[p * n + q] * a[p * n + q];
        }
    }
    sum.sqrt()
}

/// Eigenvalues of the row-major symmetric `dim x dim` matrix, ascending.
///
/// Sweeps rotate every off-diagonal pair in row order until the
/// off-diagonal Frobenius norm drops below `tol`.
pub fn symmetric_eigenvalues(matrix: &[f64], dim: usize, tol: f64) -> Result<Vec<f64>, JacobiError> {
    if matrix.len() != dim * dim {
        return Err(JacobiError::NotSquare { dim, len: matrix.len() });
    }
    for p in 0..dim {
        for q in (p + 1)..dim {
            if matrix[p * dim + q] != matrix[q * dim + p] {
                return Err(JacobiError::NotSymmetric { row: p, col: q });
            }
        }
    }
    if matrix.iter().any(|x| !x.is_finite()) {
        return Err(JacobiError::NonFinite);
    }
    let n = dim;
    let mut a = matrix.to_vec();
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a, n);
        if off < tol {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(JacobiError::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}
