/// Crate-wide error type.
///
/// Numeric diagnostics are stored as `f64` regardless of the scalar type the
/// failing computation ran in, so the error type stays non-generic.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("singular matrix at pivot column {column}: |pivot| = {pivot:.3e} < 1e-12 x column scale {scale:.3e}")]
    SingularMatrix { column: usize, pivot: f64, scale: f64 },

    #[error("shape mismatch in {context}: expected {expected}, got {got}")]
    ShapeMismatch {
        context: &'static str,
        expected: String,
        got: String,
    },

    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("infeasible program specification: {0}")]
    InfeasibleSpec(String),

    #[error("program infeasible: phase-1 leaves constraint violation {max_violation:.3e}")]
    Infeasible { max_violation: f64 },

    #[error("interior-point solve stopped at iteration limit {iterations}: gap {duality_gap:.3e}, primal {primal_residual:.3e}, dual {dual_residual:.3e}")]
    MaxIterations {
        iterations: usize,
        duality_gap: f64,
        primal_residual: f64,
        dual_residual: f64,
        /// Best iterate found before giving up.
        best_x: Vec<f64>,
    },

    #[error("KKT sensitivity system singular (degenerate active set) at pivot column {column}: |pivot| = {pivot:.3e}, column scale {scale:.3e}")]
    SingularKkt { column: usize, pivot: f64, scale: f64 },

    #[error("fixed-point iteration did not converge: residual {residual:.3e} after {iterations} iterations")]
    NotConverged { residual: f64, iterations: usize },

    #[error("equilibrium is not stable enough for implicit differentiation: rho_hat = {rho_hat:.6}")]
    UnstableEquilibrium { rho_hat: f64 },

    #[error("true world response is not a contraction at the sample equilibrium: rho_hat = {rho_hat:.6}")]
    WorldModelDiverges { rho_hat: f64 },

    #[error("parse error at line {line}, column `{column}`: {detail}")]
    Parse {
        line: usize,
        column: String,
        detail: String,
    },

    #[error("non-finite value in {context}")]
    NonFinite { context: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("training aborted at epoch {epoch}: {skipped}/{total} samples failed with degenerate or unstable gradients")]
    TrainingAborted {
        epoch: usize,
        skipped: usize,
        total: usize,
    },

    #[error("step {step} of the forward pass failed: {source}")]
    ForwardStep {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Attach the step index at which a multi-step forward pass failed.
    pub fn at_step(self, step: usize) -> Error {
        Error::ForwardStep {
            step,
            source: Box::new(self),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
