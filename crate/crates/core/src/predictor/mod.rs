//! The parametric predictive model: an MLP mapping `[decision; features]`
//! to predicted cost parameters, with hand-derived reverse-mode gradients.
//!
//! The model is deliberately small and fixed-shape (one hidden layer by
//! default, leaky-rectifier activations, optional softplus output head for
//! problems that need positive predictions). There is no dropout: the
//! fixed-point forward pass requires the map to be deterministic.

mod adam;
mod checkpoint;
mod init;
mod mlp;

pub use adam::{adam_step, AdamConfig, AdamState};
pub use checkpoint::{load_checkpoint, save_checkpoint};
pub use init::kaiming_uniform;
pub use mlp::{
    predictor_forward, predictor_input_jacobian, predictor_param_vjp, ForwardTape, MlpParams,
    OutputTransform, PredictorGradients,
};
