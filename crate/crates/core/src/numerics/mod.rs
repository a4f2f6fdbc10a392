//! Dense linear algebra foundation.
//!
//! Everything downstream (the interior-point solver, the KKT sensitivity
//! system, the MLP) runs on [`DenseMatrix`] / [`DenseVector`]. The problem
//! sizes here are small and dense (KKT systems of a few thousand rows at
//! most) so there are no sparse formats and no external BLAS.
//!
//! All operations are pure functions on immutable inputs.

mod finite_diff;
mod lu;
mod matrix;
mod spectral;
mod vector;

pub use finite_diff::finite_difference_jacobian;
pub use lu::{lu_factor, lu_solve, lu_solve_vec, LuFactors};
pub use matrix::DenseMatrix;
pub use spectral::{
    spectral_radius_default, spectral_radius_estimate, SpectralEstimate, SPECTRAL_DEFAULT_ITERS,
    SPECTRAL_DEFAULT_TOL,
};
pub use vector::DenseVector;
