//! Spatial weights matrices: validated, symmetric, nonnegative, zero diagonal.

mod io;

pub use io::{from_reader, read_csv, to_writer, write_csv};

use rand::distr::Open01;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rng::{substream, SubstreamRng};
use crate::scalar::Scalar;

/// Smallest supported number of spatial units.
pub const MIN_UNITS: usize = 3;

/// A validated spatial weights matrix.
///
/// The stored matrix is always the symmetric part `(W + Wᵀ)/2` of what the
/// caller supplied; Moran's I is unchanged by that substitution.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightsMatrix<T> {
    w: Matrix<T>,
    sum: T,
}

impl<T: Scalar> WeightsMatrix<T> {
    /// Validates `raw` and stores its symmetric part.
    pub fn from_dense(raw: &Matrix<T>) -> Result<Self> {
        if !raw.is_square() {
            return Err(Error::NonSquare {
                rows: raw.rows(),
                row: 0,
                cols: raw.cols(),
            });
        }
        let n = raw.rows();
        if n < MIN_UNITS {
            return Err(Error::TooSmall { n, min: MIN_UNITS });
        }
        for i in 0..n {
            for j in 0..n {
                let x = raw[(i, j)];
                if !x.is_finite() {
                    return Err(Error::NonFiniteWeight { i, j });
                }
                if i == j {
                    if x != T::zero() {
                        return Err(Error::NonzeroDiagonal {
                            i,
                            value: x.to_f64_lossy(),
                        });
                    }
                } else if x < T::zero() {
                    return Err(Error::NegativeWeight {
                        i,
                        j,
                        value: x.to_f64_lossy(),
                    });
                }
            }
        }
        let w = raw.symmetrized();
        let sum = w.sum();
        if sum.is_nan() || sum <= T::zero() {
            return Err(Error::AllZeroWeights);
        }
        Ok(Self { w, sum })
    }

    /// Like [`from_dense`](Self::from_dense) for row vectors; ragged input is `NonSquare`.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::NonSquare {
                rows: n,
                row,
                cols: r.len(),
            });
        }
        let raw = Matrix::from_rows(rows).expect("rows checked square");
        Self::from_dense(&raw)
    }

    /// Points on a line with equal spacing: `w_ij = 2^(1−|i−j|)` for
    /// `1 ≤ |i−j| ≤ q`, zero otherwise.
    pub fn line_decay(n: usize, q: usize) -> Result<Self> {
        if n < MIN_UNITS {
            return Err(Error::TooSmall { n, min: MIN_UNITS });
        }
        if q == 0 || q > n - 1 {
            return Err(Error::QOutOfRange { q, max: n - 1 });
        }
        let two = T::lit(2.0);
        let raw = Matrix::from_fn(n, n, |i, j| {
            let d = i.abs_diff(j);
            if d >= 1 && d <= q {
                two.powi(1 - d as i32)
            } else {
                T::zero()
            }
        });
        Self::from_dense(&raw)
    }

    /// `11ᵀ − I`.
    pub fn complete(n: usize) -> Result<Self> {
        if n < MIN_UNITS {
            return Err(Error::TooSmall { n, min: MIN_UNITS });
        }
        Self::from_dense(&Matrix::from_fn(n, n, |i, j| {
            if i == j {
                T::zero()
            } else {
                T::one()
            }
        }))
    }

    /// Off-diagonal weights drawn independently from the open interval
    /// `(1 − a, 1 + a)`, filled row-major skipping the diagonal, then
    /// symmetrised. Uses substream 0 of `seed`.
    pub fn random_uniform(n: usize, a: f64, seed: u64) -> Result<Self> {
        Self::random_uniform_with(n, a, &mut substream(seed, 0))
    }

    /// [`random_uniform`](Self::random_uniform) drawing from a caller-positioned substream.
    pub fn random_uniform_with(n: usize, a: f64, rng: &mut SubstreamRng) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::AOutOfRange { a });
        }
        if n < MIN_UNITS {
            return Err(Error::TooSmall { n, min: MIN_UNITS });
        }
        let raw = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                T::zero()
            } else {
                let u: f64 = rng.sample(Open01);
                T::lit(1.0 - a + 2.0 * a * u)
            }
        });
        Self::from_dense(&raw)
    }

    pub fn n(&self) -> usize {
        self.w.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.w
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.w[(i, j)]
    }

    /// `Σ_ij w_ij`.
    pub fn sum(&self) -> T {
        self.sum
    }

    /// `w̄ = Σ_ij w_ij / n²`.
    pub fn mean(&self) -> T {
        let n = T::of_usize(self.n());
        self.sum / (n * n)
    }

    pub fn nonzero_count(&self) -> usize {
        self.w
            .as_slice()
            .iter()
            .filter(|&&x| x != T::zero())
            .count()
    }
}
