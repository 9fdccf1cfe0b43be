//! Moran's I together with its exact attainable range.
//!
//! For a symmetric weights matrix `W`, Moran's I of observations `y` is the
//! Rayleigh quotient of `v = Hᵀy` under the reduced matrix
//! `W̃ = Hᵀ W H / (n w̄)`, where the columns of `H` are an orthonormal basis
//! of the complement of the ones vector. Its attainable range is therefore
//! `[λ_min(W̃), λ_max(W̃)]`, which depends on `W` alone. The crate computes
//! that range, the observations attaining it, the rescaled statistic I_M
//! whose range is exactly `[−1, 1]`, and permutation inference.
//!
//! The numerical core is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix it to `f64`, which the experiment drivers use.

pub mod error;
pub mod experiments;
pub mod fmt;
pub mod inference;
pub mod linalg;
pub mod moran;
pub mod rng;
pub mod scalar;
pub mod weights;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Weights = weights::WeightsMatrix<f64>;
pub type Matrix = linalg::Matrix<f64>;
pub type Basis = linalg::OrthonormalBasis<f64>;
pub type Reduced = linalg::ReducedMatrix<f64>;
pub type Eigen = linalg::EigenDecomposition<f64>;
pub type Bounds = moran::EigenBounds<f64>;
pub type Analysis = moran::MoranResult<f64>;
pub type PermutationResult = inference::PermutationTestResult<f64>;

pub type Weights32 = weights::WeightsMatrix<f32>;
pub type Bounds32 = moran::EigenBounds<f32>;
