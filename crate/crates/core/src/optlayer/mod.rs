//! The convex optimization layer: minimize `c^T x + reg_eps ||x||^2` over a
//! polytope `G x <= h`, and differentiate the minimizer with respect to `c`.
//!
//! The solver is a primal-dual interior-point method on the inequality
//! system. Sensitivities come from differentiating the stationarity and
//! complementary-slackness equations: assemble the square system
//!
//! ```text
//!     M = [ 2 eps I      G^T          ]
//!         [ D(z) G       D(G x - h)   ]
//! ```
//!
//! solve `M Y = [I; 0]`, and keep the first `n` rows of `-Y` as `dx*/dc`.
//! A degenerate active set (a slack and its dual both near zero) makes `M`
//! singular; that is reported loudly so callers can skip the sample instead
//! of training on garbage gradients.

mod ipm;
mod program;
mod sensitivity;

pub use ipm::{solve, IpmOptions, PrimalDualSolution};
pub use program::{ConvexProgram, ProblemTag, ProgramSpec};
pub use sensitivity::{assemble_kkt_matrix, kkt_sensitivity};
