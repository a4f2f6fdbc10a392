use super::{MlpParams, PredictorGradients};
use crate::Scalar;

/// Adam hyperparameters with decoupled weight decay.
#[derive(Clone, Copy, Debug)]
pub struct AdamConfig<S> {
    pub lr: S,
    pub beta1: S,
    pub beta2: S,
    pub eps: S,
    pub weight_decay: S,
}

impl<S: Scalar> Default for AdamConfig<S> {
    fn default() -> Self {
        Self {
            lr: S::of(1e-3),
            beta1: S::of(0.9),
            beta2: S::of(0.999),
            eps: S::of(1e-8),
            weight_decay: S::of(5e-4),
        }
    }
}

/// First/second moment buffers, shape-congruent with the parameters.
#[derive(Clone, Debug)]
pub struct AdamState<S> {
    m: PredictorGradients<S>,
    v: PredictorGradients<S>,
    step: u64,
}

impl<S: Scalar> AdamState<S> {
    pub fn new(params: &MlpParams<S>) -> Self {
        Self {
            m: PredictorGradients::zeros_like(params),
            v: PredictorGradients::zeros_like(params),
            step: 0,
        }
    }

    pub fn step_count(&self) -> u64 {
        self.step
    }
}

/// One Adam update. Weight decay is decoupled: it shrinks the parameters
/// directly instead of entering the moment estimates.
pub fn adam_step<S: Scalar>(
    params: &mut MlpParams<S>,
    grads: &PredictorGradients<S>,
    state: &mut AdamState<S>,
    cfg: &AdamConfig<S>,
) {
    state.step += 1;
    let t = state.step as i32;
    let bias1 = S::one() - cfg.beta1.powi(t);
    let bias2 = S::one() - cfg.beta2.powi(t);
    let one = S::one();

    let update_tensor = |theta: &mut [S], g: &[S], m: &mut [S], v: &mut [S]| {
        for i in 0..theta.len() {
            m[i] = cfg.beta1 * m[i] + (one - cfg.beta1) * g[i];
            v[i] = cfg.beta2 * v[i] + (one - cfg.beta2) * g[i] * g[i];
            let m_hat = m[i] / bias1;
            let v_hat = v[i] / bias2;
            theta[i] -= cfg.lr * m_hat / (v_hat.sqrt() + cfg.eps);
            theta[i] -= cfg.lr * cfg.weight_decay * theta[i];
        }
    };

    for l in 0..params.num_layers() {
        update_tensor(
            params.weights_mut()[l].as_mut_slice(),
            grads.weights[l].as_slice(),
            state.m.weights[l].as_mut_slice(),
            state.v.weights[l].as_mut_slice(),
        );
        update_tensor(
            params.biases_mut()[l].as_mut_slice(),
            grads.biases[l].as_slice(),
            state.m.biases[l].as_mut_slice(),
            state.v.biases[l].as_mut_slice(),
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{DenseMatrix, DenseVector};
    use crate::predictor::{kaiming_uniform, OutputTransform};

    #[test]
    fn zero_gradients_and_zero_decay_leave_params_unchanged() {
        let mut params: MlpParams<f64> =
            kaiming_uniform(&[4, 3, 2], 0.01, OutputTransform::Identity, 1).unwrap();
        let before = params.clone();
        let grads = PredictorGradients::zeros_like(&params);
        let mut state = AdamState::new(&params);
        let cfg = AdamConfig {
            weight_decay: 0.0,
            ..AdamConfig::default()
        };
        adam_step(&mut params, &grads, &mut state, &cfg);
        assert_eq!(params, before);
    }

    #[test]
    fn first_step_moves_against_gradient() {
        let mut params = MlpParams::new(
            vec![1, 1],
            vec![DenseMatrix::from_vec(1, 1, vec![1.0])],
            vec![DenseVector::zeros(1)],
            0.01,
            OutputTransform::Identity,
        )
        .unwrap();
        let mut grads = PredictorGradients::zeros_like(&params);
        grads.weights[0][(0, 0)] = 1.0;
        let mut state = AdamState::new(&params);
        let cfg = AdamConfig {
            weight_decay: 0.0,
            ..AdamConfig::default()
        };
        adam_step(&mut params, &grads, &mut state, &cfg);
        assert!(params.weights()[0][(0, 0)] < 1.0);
    }

    #[test]
    fn identical_runs_produce_bit_identical_trajectories() {
        let run = || {
            let mut params: MlpParams<f64> =
                kaiming_uniform(&[3, 4, 2], 0.01, OutputTransform::Identity, 5).unwrap();
            let mut state = AdamState::new(&params);
            let cfg = AdamConfig::default();
            for step in 0..25 {
                let mut grads = PredictorGradients::zeros_like(&params);
                for (i, g) in grads.weights[0].as_mut_slice().iter_mut().enumerate() {
                    *g = ((step * 7 + i) as f64).sin();
                }
                adam_step(&mut params, &grads, &mut state, &cfg);
            }
            params
        };
        let a = run();
        let b = run();
        assert_eq!(a, b);
    }
}
