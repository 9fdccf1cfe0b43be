//! Cyclic Jacobi eigensolver for dense symmetric matrices.

use crate::error::{Error, Result};
use crate::linalg::matrix::Matrix;
use crate::scalar::Scalar;

/// Off-diagonal Frobenius norm below this fraction of ‖A‖_F counts as converged.
pub const JACOBI_REL_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Full spectrum of a symmetric matrix: eigenvalues ascending, column k of
/// `vectors` paired with `values[k]`.
///
/// Each eigenvector is sign-normalised so that its entry of largest
/// magnitude is positive (ties go to the lowest index).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition<T> {
    pub values: Vec<T>,
    pub vectors: Matrix<T>,
}

impl<T: Scalar> EigenDecomposition<T> {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, k: usize) -> Vec<T> {
        self.vectors.column(k)
    }

    pub fn min(&self) -> (T, Vec<T>) {
        (self.values[0], self.vector(0))
    }

    pub fn max(&self) -> (T, Vec<T>) {
        let k = self.dim() - 1;
        (self.values[k], self.vector(k))
    }

    /// `V diag(λ) Vᵀ`.
    pub fn reconstruct(&self) -> Matrix<T> {
        let m = self.dim();
        Matrix::from_fn(m, m, |i, j| {
            (0..m)
                .map(|k| self.vectors[(i, k)] * self.values[k] * self.vectors[(j, k)])
                .sum()
        })
    }
}

fn off_diagonal_norm<T: Scalar>(a: &Matrix<T>) -> T {
    let m = a.rows();
    let mut s = T::zero();
    for i in 0..m {
        for j in 0..m {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of the symmetric matrix `a` by cyclic Jacobi sweeps.
///
/// Only symmetry is assumed; the strictly lower triangle is read as the
/// mirror of the upper one. Output is deterministic for identical input.
pub fn symmetric_eigen<T: Scalar>(a: &Matrix<T>) -> Result<EigenDecomposition<T>> {
    assert!(a.is_square(), "symmetric_eigen needs a square matrix");
    let m = a.rows();
    let mut a = a.symmetrized();
    let mut v = Matrix::identity(m);
    let target = T::floor_tol(JACOBI_REL_TOL) * a.frobenius_norm();

    let mut converged = false;
    for _ in 0..=JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            converged = true;
            break;
        }
        sweep(&mut a, &mut v);
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)]
            .partial_cmp(&a[(j, j)])
            .expect("finite eigenvalues")
    });
    let values = order.iter().map(|&k| a[(k, k)]).collect();
    let mut vectors = Matrix::from_fn(m, m, |r, c| v[(r, order[c])]);
    for c in 0..m {
        normalize_sign(&mut vectors, c);
    }
    Ok(EigenDecomposition { values, vectors })
}

fn sweep<T: Scalar>(a: &mut Matrix<T>, v: &mut Matrix<T>) {
    let m = a.rows();
    let two = T::lit(2.0);
    for p in 0..m {
        for q in p + 1..m {
            let apq = a[(p, q)];
            if apq == T::zero() {
                continue;
            }
            let tau = (a[(q, q)] - a[(p, p)]) / (two * apq);
            let t = tau.signum() / (tau.abs() + (T::one() + tau * tau).sqrt());
            let c = T::one() / (T::one() + t * t).sqrt();
            let s = t * c;

            a[(p, p)] -= t * apq;
            a[(q, q)] += t * apq;
            a[(p, q)] = T::zero();
            a[(q, p)] = T::zero();
            for k in 0..m {
                if k == p || k == q {
                    continue;
                }
                let akp = a[(k, p)];
                let akq = a[(k, q)];
                let new_p = c * akp - s * akq;
                let new_q = s * akp + c * akq;
                a[(k, p)] = new_p;
                a[(p, k)] = new_p;
                a[(k, q)] = new_q;
                a[(q, k)] = new_q;
            }
            for k in 0..m {
                let vkp = v[(k, p)];
                let vkq = v[(k, q)];
                v[(k, p)] = c * vkp - s * vkq;
                v[(k, q)] = s * vkp + c * vkq;
            }
        }
    }
}

fn normalize_sign<T: Scalar>(vectors: &mut Matrix<T>, col: usize) {
    let m = vectors.rows();
    let mut best = 0;
    for r in 1..m {
        if vectors[(r, col)].abs() > vectors[(best, col)].abs() {
            best = r;
        }
    }
    if vectors[(best, col)] < T::zero() {
        for r in 0..m {
            vectors[(r, col)] = -vectors[(r, col)];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_input() {
        let a = Matrix::<f64>::identity(3).scale(-1.0 / 3.0);
        let e = symmetric_eigen(&a).unwrap();
        for &l in &e.values {
            assert!((l + 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn two_by_two_closed_form() {
        let a = Matrix::<f64>::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let e = symmetric_eigen(&a).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15);
        assert!((e.values[1] - 1.0).abs() < 1e-15);
        let r = 1.0 / 2f64.sqrt();
        // tie on |entry|: lowest index is made positive
        let v0 = e.vector(0);
        assert!((v0[0] - r).abs() < 1e-15 && (v0[1] + r).abs() < 1e-15);
        let v1 = e.vector(1);
        assert!((v1[0] - r).abs() < 1e-15 && (v1[1] - r).abs() < 1e-15);
    }

    #[test]
    fn zero_matrix_converges() {
        let e = symmetric_eigen(&Matrix::<f64>::zeros(4, 4)).unwrap();
        assert!(e.values.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn residual_and_orthonormality() {
        let m = 12;
        let a = Matrix::from_fn(m, m, |i, j| {
            let (i, j) = (i.min(j) as f64, i.max(j) as f64);
            ((i + 1.0) * 0.37 + (j + 2.0) * 1.13).sin()
        });
        let e = symmetric_eigen(&a).unwrap();
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        let rho = e.values[0].abs().max(e.values[m - 1].abs());
        for k in 0..m {
            let v = e.vector(k);
            let av = a.matvec(&v);
            for (x, y) in av.iter().zip(&v) {
                assert!((x - e.values[k] * y).abs() < 1e-9 * rho);
            }
        }
        let vtv = e.vectors.transpose().matmul(&e.vectors);
        assert!(vtv.max_abs_diff(&Matrix::identity(m)) < 1e-10);
        assert!(e.reconstruct().max_abs_diff(&a) < 1e-8 * rho);
    }

    #[test]
    fn single_precision() {
        let a = Matrix::from_rows(&[vec![2.0f32, 1.0], vec![1.0, 2.0]]).unwrap();
        let e = symmetric_eigen(&a).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-6);
        assert!((e.values[1] - 3.0).abs() < 1e-6);
    }
}
