//! Recursive decision-focused learning.
//!
//! A predictive model and a convex optimization layer are coupled in a
//! feedback loop: the model maps a decision and exogenous features to the
//! cost parameters of the program, and the program's minimizer is fed back
//! into the model. The loop is trained end to end with a decision loss,
//! either by unrolling a fixed number of prediction/optimization steps and
//! backpropagating through all of them, or by finding the loop's fixed
//! point and differentiating it implicitly via the adjoint of
//! `I - J` at the equilibrium.
//!
//! Modules:
//! - [`numerics`]: dense matrices/vectors, pivoted LU, spectral-radius
//!   estimation, finite differences.
//! - [`predictor`]: a small MLP with hand-derived reverse-mode gradients
//!   and an Adam optimizer.
//! - [`optlayer`]: the convex program (linear cost + quadratic
//!   regularization over a polytope), a primal-dual interior-point solver,
//!   and the KKT sensitivity system producing `dx*/dc`.
//! - [`recursive`]: the coupled layer, unrolled and implicit gradients,
//!   truncated Neumann sums, and the gradient-equivalence audit.
//! - [`problems`]: benchmark instances (inventory ordering with price
//!   feedback, assignment with regret feedback), synthetic data, baselines.
//! - [`harness`]: run configuration, training loops, metrics, reports.
//!
//! Core math is generic over the scalar type; the concrete aliases
//! [`Matrix`] and [`Vector`] fix `f64`, which is what the benchmark and
//! harness layers use throughout.

pub mod error;
pub mod harness;
pub mod numerics;
pub mod optlayer;
pub mod predictor;
pub mod problems;
pub mod recursive;
mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

use numerics::{DenseMatrix, DenseVector};

/// Dense `f64` matrix, the concrete type used by the benchmarks.
pub type Matrix = DenseMatrix<f64>;
/// Dense `f64` vector, the concrete type used by the benchmarks.
pub type Vector = DenseVector<f64>;
