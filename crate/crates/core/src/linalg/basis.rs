use crate::error::{Error, Result};
use crate::linalg::matrix::{dot, Matrix};
use crate::scalar::Scalar;

/// An n×(n−1) matrix whose columns form an orthonormal basis of the
/// complement of the ones vector, so that `H Hᵀ = I − 11ᵀ/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalBasis<T> {
    h: Matrix<T>,
}

impl<T: Scalar> OrthonormalBasis<T> {
    /// Wraps `h` after checking the basis invariants within `tol`.
    pub fn new(h: Matrix<T>, tol: T) -> Result<Self> {
        let n = h.rows();
        if n < 2 {
            return Err(Error::TooSmall { n, min: 2 });
        }
        if h.cols() != n - 1 {
            return Err(Error::DimensionMismatch {
                expected: n - 1,
                got: h.cols(),
            });
        }
        let basis = Self { h };
        let (gram, ones) = basis.deviation();
        if gram > tol || ones > tol {
            return Err(Error::InvalidParameter(format!(
                "columns are not an orthonormal basis of the ones-complement (gram {gram}, ones {ones})"
            )));
        }
        Ok(basis)
    }

    pub fn n(&self) -> usize {
        self.h.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.h
    }

    /// `H j` for a coordinate vector `j` of length n−1.
    pub fn embed(&self, j: &[T]) -> Vec<T> {
        self.h.matvec(j)
    }

    /// `Hᵀ y` for an n-vector `y`.
    pub fn coordinates(&self, y: &[T]) -> Vec<T> {
        self.h.tr_matvec(y)
    }

    /// Max deviation of `HᵀH` from the identity and max |1ᵀ hᵢ|.
    pub fn deviation(&self) -> (T, T) {
        let gram = self.h.transpose().matmul(&self.h);
        let gram_dev = gram.max_abs_diff(&Matrix::identity(self.h.cols()));
        let ones = self.h.tr_matvec(&vec![T::one(); self.n()]);
        let ones_dev = ones.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
        (gram_dev, ones_dev)
    }
}

/// Helmert basis: column i (1-based) is `(1, …, 1, −i, 0, …, 0) / √(i(i+1))`
/// with i leading ones.
pub fn helmert_basis<T: Scalar>(n: usize) -> Result<OrthonormalBasis<T>> {
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    let mut h = Matrix::zeros(n, n - 1);
    for col in 0..n - 1 {
        let i = col + 1;
        let norm = T::of_usize(i * (i + 1)).sqrt();
        let ones = T::one() / norm;
        for row in 0..i {
            h[(row, col)] = ones;
        }
        h[(i, col)] = -T::of_usize(i) / norm;
    }
    Ok(OrthonormalBasis { h })
}

/// A second basis of the ones-complement, built by modified Gram–Schmidt on
/// the centered standard basis vectors `e_k − 1/n` taken in reverse order.
/// Its columns differ from Helmert's, which makes it useful for checking
/// that results depend on the weights only.
pub fn gram_schmidt_basis<T: Scalar>(n: usize) -> Result<OrthonormalBasis<T>> {
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    let inv_n = T::one() / T::of_usize(n);
    let mut cols: Vec<Vec<T>> = Vec::with_capacity(n - 1);
    for k in (1..n).rev() {
        let mut v: Vec<T> = (0..n)
            .map(|r| if r == k { T::one() - inv_n } else { -inv_n })
            .collect();
        // two passes keep the result orthogonal to working precision
        for _ in 0..2 {
            let mean = v.iter().copied().sum::<T>() * inv_n;
            v.iter_mut().for_each(|x| *x -= mean);
            for c in &cols {
                let p = dot(&v, c);
                v.iter_mut().zip(c).for_each(|(x, &ci)| *x -= p * ci);
            }
        }
        let norm = dot(&v, &v).sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
        cols.push(v);
    }
    let h = Matrix::from_fn(n, n - 1, |r, c| cols[c][r]);
    Ok(OrthonormalBasis { h })
}
