use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use super::{MlpParams, OutputTransform};
use crate::numerics::{DenseMatrix, DenseVector};
use crate::{Result, Scalar};

/// Kaiming-uniform initialization for leaky-rectifier networks.
///
/// Weights are drawn from `U(-b, b)` with `b = sqrt(6 / ((1 + slope^2) * fan_in))`,
/// biases from `U(-1/sqrt(fan_in), 1/sqrt(fan_in))`. Sampling order is fixed
/// (layer by layer, weights row-major, then bias) so a seed fully determines
/// the parameters.
pub fn kaiming_uniform<S: Scalar>(
    layer_dims: &[usize],
    leaky_slope: f64,
    output: OutputTransform,
    seed: u64,
) -> Result<MlpParams<S>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights = Vec::with_capacity(layer_dims.len() - 1);
    let mut biases = Vec::with_capacity(layer_dims.len() - 1);
    for l in 0..layer_dims.len() - 1 {
        let fan_in = layer_dims[l] as f64;
        let w_bound = (6.0 / ((1.0 + leaky_slope * leaky_slope) * fan_in)).sqrt();
        let b_bound = 1.0 / fan_in.sqrt();
        weights.push(DenseMatrix::from_fn(layer_dims[l + 1], layer_dims[l], |_, _| {
            S::of(rng.gen_range(-w_bound..w_bound))
        }));
        biases.push(DenseVector::from_fn(layer_dims[l + 1], |_| {
            S::of(rng.gen_range(-b_bound..b_bound))
        }));
    }
    MlpParams::new(
        layer_dims.to_vec(),
        weights,
        biases,
        S::of(leaky_slope),
        output,
    )
}
