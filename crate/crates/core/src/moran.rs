//! Moran's I, its exact attainable range, the observations attaining it,
//! and the rescaled alternative with range exactly [−1, 1].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    helmert_basis, is_positive_definite, reduce_helmert, EigenDecomposition, ReducedMatrix,
};
use crate::scalar::Scalar;
use crate::weights::WeightsMatrix;

/// Threshold separating a negative-definite reduced matrix from an indefinite one.
pub const DEFINITENESS_TOL: f64 = 1e-12;
/// Relative distance from a bound within which I counts as attaining it.
pub const ENDPOINT_SNAP: f64 = 1e-12;

/// Extreme eigenpairs of the reduced matrix: the exact range of Moran's I
/// and the coordinate vectors attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenBounds<T> {
    pub lambda_min: T,
    pub lambda_max: T,
    pub j_min: Vec<T>,
    pub j_max: Vec<T>,
}

impl<T: Scalar> EigenBounds<T> {
    pub fn from_eigen(e: &EigenDecomposition<T>) -> Self {
        let (lambda_min, j_min) = e.min();
        let (lambda_max, j_max) = e.max();
        Self {
            lambda_min,
            lambda_max,
            j_min,
            j_max,
        }
    }

    /// Number of spatial units the bounds belong to.
    pub fn n(&self) -> usize {
        self.j_min.len() + 1
    }

    /// `c_shift·1 + c_scale·H j` with the Helmert basis and `j` the lower
    /// or upper eigenvector.
    pub fn extremal_observations(&self, which: Extreme, c_shift: T, c_scale: T) -> Result<Vec<T>> {
        if c_scale == T::zero() {
            return Err(Error::ZeroScale);
        }
        let j = match which {
            Extreme::Lower => &self.j_min,
            Extreme::Upper => &self.j_max,
        };
        let hj = helmert_basis(self.n())?.embed(j);
        Ok(hj.into_iter().map(|x| c_shift + c_scale * x).collect())
    }

    /// The alternative statistic for an observed I; see [`moran_alternative`].
    pub fn alternative(&self, i: T) -> Result<T> {
        moran_alternative(i, self, self.n())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extreme {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    NegativeDefinite,
    /// `|λ_max| ≤ 1e-12`.
    NegativeSemidefiniteBoundary,
    Indefinite,
}

impl Definiteness {
    pub fn from_lambda_max<T: Scalar>(lambda_max: T) -> Self {
        let tol = T::lit(DEFINITENESS_TOL);
        if lambda_max < -tol {
            Definiteness::NegativeDefinite
        } else if lambda_max > tol {
            Definiteness::Indefinite
        } else {
            Definiteness::NegativeSemidefiniteBoundary
        }
    }
}

/// Moran's I with the bounds it was evaluated against.
#[derive(Debug, Clone, PartialEq)]
pub struct MoranResult<T> {
    pub i: T,
    pub i_m: T,
    pub n: usize,
    pub bounds: EigenBounds<T>,
}

/// Deviations from the mean, rejecting non-finite and constant input.
pub(crate) fn centered<T: Scalar>(y: &[T]) -> Result<(Vec<T>, T)> {
    if let Some(index) = y.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFiniteObservation { index });
    }
    let n = T::of_usize(y.len());
    let mean = y.iter().copied().sum::<T>() / n;
    let d: Vec<T> = y.iter().map(|&x| x - mean).collect();
    let ss: T = d.iter().map(|&x| x * x).sum();
    let floor = T::floor_tol(1e-12) * n * T::one().max(mean * mean);
    if ss.is_nan() || ss <= floor {
        return Err(Error::ConstantObservations);
    }
    Ok((d, ss))
}

/// `Σ_ij w_ij a_i b_j` exploiting symmetry and the zero diagonal.
pub(crate) fn cross_product<T: Scalar>(w: &WeightsMatrix<T>, a: &[T]) -> T {
    let n = w.n();
    let m = w.matrix();
    let mut s = T::zero();
    for i in 0..n {
        let row = m.row(i);
        let mut acc = T::zero();
        for j in i + 1..n {
            acc += row[j] * a[j];
        }
        s += a[i] * acc;
    }
    s + s
}

/// Moran's I from its defining formula,
/// `n Σ_ij w_ij (y_i − ȳ)(y_j − ȳ) / (Σ_ij w_ij · Σ_i (y_i − ȳ)²)`.
pub fn morans_i<T: Scalar>(y: &[T], w: &WeightsMatrix<T>) -> Result<T> {
    if y.len() != w.n() {
        return Err(Error::DimensionMismatch {
            expected: w.n(),
            got: y.len(),
        });
    }
    let (d, ss) = centered(y)?;
    Ok(T::of_usize(w.n()) * cross_product(w, &d) / (w.sum() * ss))
}

/// The reduced matrix against the Helmert basis.
pub fn reduced<T: Scalar>(w: &WeightsMatrix<T>) -> Result<ReducedMatrix<T>> {
    reduce_helmert(w)
}

/// Exact range of Moran's I for `w`: the extreme eigenvalues of the reduced matrix.
pub fn bounds<T: Scalar>(w: &WeightsMatrix<T>) -> Result<EigenBounds<T>> {
    Ok(EigenBounds::from_eigen(&reduced(w)?.eigen()?))
}

/// Observations attaining the lower or upper bound of I for `w`.
pub fn extremal_observations<T: Scalar>(
    w: &WeightsMatrix<T>,
    which: Extreme,
    c_shift: T,
    c_scale: T,
) -> Result<Vec<T>> {
    if c_scale == T::zero() {
        return Err(Error::ZeroScale);
    }
    bounds(w)?.extremal_observations(which, c_shift, c_scale)
}

/// Rescales I to the exact range [−1, 1].
///
/// `s = (n−1) I + 1` is divided by `|(n−1) λ_min + 1|` when negative and by
/// `(n−1) λ_max + 1` otherwise. Values of `i` at or beyond a bound (within
/// [`ENDPOINT_SNAP`], relative) map to exactly −1 or 1, the lower one taking
/// precedence when the range collapses to a point.
pub fn moran_alternative<T: Scalar>(i: T, b: &EigenBounds<T>, n: usize) -> Result<T> {
    if i.is_nan() {
        return Err(Error::NonFiniteObservation { index: 0 });
    }
    // collapsed range (complete graph): I is constant at the lower bound
    if b.lambda_max - b.lambda_min <= T::floor_tol(1e-12) * T::one().max(b.lambda_min.abs()) {
        return Ok(-T::one());
    }
    let snap = T::floor_tol(ENDPOINT_SNAP);
    if i <= b.lambda_min + snap * T::one().max(b.lambda_min.abs()) {
        return Ok(-T::one());
    }
    if i >= b.lambda_max - snap * T::one().max(b.lambda_max.abs()) {
        return Ok(T::one());
    }
    let k = T::of_usize(n - 1);
    let s = k * i + T::one();
    let im = if s < T::zero() {
        s / (k * b.lambda_min + T::one()).abs()
    } else {
        let divisor = k * b.lambda_max + T::one();
        if divisor.is_nan() || divisor <= T::zero() {
            return Err(Error::DegenerateBounds {
                divisor: divisor.to_f64_lossy(),
            });
        }
        s / divisor
    };
    Ok(im.max(-T::one()).min(T::one()))
}

/// I, I_M and the bounds from one eigendecomposition.
pub fn analyze<T: Scalar>(y: &[T], w: &WeightsMatrix<T>) -> Result<MoranResult<T>> {
    let i = morans_i(y, w)?;
    let bounds = bounds(w)?;
    let i_m = moran_alternative(i, &bounds, w.n())?;
    Ok(MoranResult {
        i,
        i_m,
        n: w.n(),
        bounds,
    })
}

/// Sign structure of the reduced matrix.
///
/// Decided without a full eigendecomposition: `λ_max < −tol` exactly when
/// `−W̃ − tol·I` admits a Cholesky factor, and `λ_max > tol` exactly when
/// `tol·I − W̃` does not.
pub fn definiteness<T: Scalar>(w: &WeightsMatrix<T>) -> Result<Definiteness> {
    Ok(classify_reduced(&reduced(w)?))
}

pub fn classify_reduced<T: Scalar>(r: &ReducedMatrix<T>) -> Definiteness {
    let neg = r.matrix().scale(-T::one());
    let tol = T::lit(DEFINITENESS_TOL);
    if is_positive_definite(&neg, -tol) {
        Definiteness::NegativeDefinite
    } else if !is_positive_definite(&neg, tol) {
        Definiteness::Indefinite
    } else {
        Definiteness::NegativeSemidefiniteBoundary
    }
}

/// [`definiteness`] via the full spectrum.
pub fn definiteness_by_eigen<T: Scalar>(w: &WeightsMatrix<T>) -> Result<Definiteness> {
    Ok(Definiteness::from_lambda_max(bounds(w)?.lambda_max))
}
