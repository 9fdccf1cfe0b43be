//! Dense linear algebra: the ones-complement basis, the reduction of a
//! weights matrix to the (n−1)×(n−1) quadratic-form matrix, and a
//! self-contained symmetric eigensolver.

mod basis;
mod cholesky;
mod eigen;
mod matrix;

pub use basis::{gram_schmidt_basis, helmert_basis, OrthonormalBasis};
pub use cholesky::is_positive_definite;
pub use eigen::{symmetric_eigen, EigenDecomposition, JACOBI_MAX_SWEEPS, JACOBI_REL_TOL};
pub use matrix::{dot, norm, Matrix};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::weights::WeightsMatrix;

/// The reduced matrix `Hᵀ W H / (n w̄)`. Its Rayleigh quotient over
/// `v = Hᵀ y` is Moran's I, and its trace is always −1.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedMatrix<T> {
    a: Matrix<T>,
}

impl<T: Scalar> ReducedMatrix<T> {
    /// Order m = n − 1.
    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.a
    }

    pub fn trace(&self) -> T {
        self.a.trace()
    }

    /// `vᵀ A v / vᵀ v`.
    pub fn rayleigh_quotient(&self, v: &[T]) -> T {
        self.a.quadratic_form(v) / dot(v, v)
    }

    pub fn eigen(&self) -> Result<EigenDecomposition<T>> {
        symmetric_eigen(&self.a)
    }
}

/// Reduces `w` onto the basis `h`: `Hᵀ W H / (n w̄)`, re-symmetrised.
pub fn reduce<T: Scalar>(
    w: &WeightsMatrix<T>,
    h: &OrthonormalBasis<T>,
) -> Result<ReducedMatrix<T>> {
    if h.n() != w.n() {
        return Err(Error::DimensionMismatch {
            expected: w.n(),
            got: h.n(),
        });
    }
    let hm = h.matrix();
    let wh = w.matrix().matmul(hm);
    let a = hm.transpose().matmul(&wh);
    // n w̄ = w_sum / n
    let scale = T::of_usize(w.n()) / w.sum();
    Ok(ReducedMatrix {
        a: a.scale(scale).symmetrized(),
    })
}

/// `reduce` against the Helmert basis in O(n²), using prefix sums in
/// place of the dense products.
pub fn reduce_helmert<T: Scalar>(w: &WeightsMatrix<T>) -> Result<ReducedMatrix<T>> {
    let n = w.n();
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    let wh = helmert_right(w.matrix());
    let a = helmert_right(&wh.transpose()).transpose();
    let scale = T::of_usize(n) / w.sum();
    Ok(ReducedMatrix {
        a: a.scale(scale).symmetrized(),
    })
}

/// `M H` for the Helmert basis H, one prefix-sum pass per row.
fn helmert_right<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let n = m.cols();
    let inv_norm: Vec<T> = (1..n)
        .map(|i| T::one() / T::of_usize(i * (i + 1)).sqrt())
        .collect();
    let mut out = Matrix::zeros(m.rows(), n - 1);
    for r in 0..m.rows() {
        let row = m.row(r);
        let mut prefix = T::zero();
        for i in 1..n {
            prefix += row[i - 1];
            out[(r, i - 1)] = (prefix - T::of_usize(i) * row[i]) * inv_norm[i - 1];
        }
    }
    out
}
