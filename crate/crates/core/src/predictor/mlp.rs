use crate::numerics::{DenseMatrix, DenseVector};
use crate::{Error, Result, Scalar};

/// Transform applied after the final affine layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputTransform {
    /// Plain affine output.
    Identity,
    /// `softplus(z) = ln(1 + e^z)`, for problems whose predicted
    /// parameters must stay positive (order prices).
    Softplus,
}

impl OutputTransform {
    fn apply<S: Scalar>(self, z: S) -> S {
        match self {
            OutputTransform::Identity => z,
            OutputTransform::Softplus => softplus(z),
        }
    }

    fn derivative<S: Scalar>(self, z: S) -> S {
        match self {
            OutputTransform::Identity => S::one(),
            OutputTransform::Softplus => sigmoid(z),
        }
    }
}

fn softplus<S: Scalar>(z: S) -> S {
    if z > S::zero() {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

fn sigmoid<S: Scalar>(z: S) -> S {
    if z >= S::zero() {
        S::one() / (S::one() + (-z).exp())
    } else {
        let e = z.exp();
        e / (S::one() + e)
    }
}

/// Weights and biases of the predictive model.
///
/// `layer_dims = [in, hidden.., out]` with `in = decision_dim + feature_dim`.
/// Hidden layers use a leaky rectifier; the output layer is affine followed
/// by the configured [`OutputTransform`].
#[derive(Clone, Debug, PartialEq)]
pub struct MlpParams<S> {
    layer_dims: Vec<usize>,
    weights: Vec<DenseMatrix<S>>,
    biases: Vec<DenseVector<S>>,
    leaky_slope: S,
    output: OutputTransform,
}

impl<S: Scalar> MlpParams<S> {
    pub fn new(
        layer_dims: Vec<usize>,
        weights: Vec<DenseMatrix<S>>,
        biases: Vec<DenseVector<S>>,
        leaky_slope: S,
        output: OutputTransform,
    ) -> Result<Self> {
        if layer_dims.len() < 2 {
            return Err(Error::Config(
                "predictor needs at least an input and an output layer".into(),
            ));
        }
        let layers = layer_dims.len() - 1;
        if weights.len() != layers || biases.len() != layers {
            return Err(Error::ShapeMismatch {
                context: "MlpParams::new",
                expected: format!("{layers} weight/bias pairs"),
                got: format!("{} weights, {} biases", weights.len(), biases.len()),
            });
        }
        for l in 0..layers {
            let (rows, cols) = (layer_dims[l + 1], layer_dims[l]);
            if weights[l].rows() != rows || weights[l].cols() != cols || biases[l].len() != rows {
                return Err(Error::ShapeMismatch {
                    context: "MlpParams::new",
                    expected: format!("layer {l}: weight {rows}x{cols}, bias {rows}"),
                    got: format!(
                        "weight {}x{}, bias {}",
                        weights[l].rows(),
                        weights[l].cols(),
                        biases[l].len()
                    ),
                });
            }
            if !weights[l].all_finite() || !biases[l].all_finite() {
                return Err(Error::NonFinite {
                    context: format!("MlpParams layer {l}"),
                });
            }
        }
        Ok(Self {
            layer_dims,
            weights,
            biases,
            leaky_slope,
            output,
        })
    }

    pub fn layer_dims(&self) -> &[usize] {
        &self.layer_dims
    }

    pub fn input_dim(&self) -> usize {
        self.layer_dims[0]
    }

    pub fn output_dim(&self) -> usize {
        *self.layer_dims.last().unwrap()
    }

    pub fn num_layers(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[DenseMatrix<S>] {
        &self.weights
    }

    pub fn biases(&self) -> &[DenseVector<S>] {
        &self.biases
    }

    pub fn weights_mut(&mut self) -> &mut [DenseMatrix<S>] {
        &mut self.weights
    }

    pub fn biases_mut(&mut self) -> &mut [DenseVector<S>] {
        &mut self.biases
    }

    pub fn leaky_slope(&self) -> S {
        self.leaky_slope
    }

    pub fn output_transform(&self) -> OutputTransform {
        self.output
    }

    pub fn num_parameters(&self) -> usize {
        self.weights
            .iter()
            .map(|w| w.rows() * w.cols())
            .sum::<usize>()
            + self.biases.iter().map(DenseVector::len).sum::<usize>()
    }

    fn activate(&self, z: S) -> S {
        if z > S::zero() {
            z
        } else {
            self.leaky_slope * z
        }
    }

    fn activate_derivative(&self, z: S) -> S {
        if z > S::zero() {
            S::one()
        } else {
            self.leaky_slope
        }
    }
}

/// Record of one forward pass, kept for the backward pass.
#[derive(Clone, Debug)]
pub struct ForwardTape<S> {
    input: DenseVector<S>,
    pre_activations: Vec<DenseVector<S>>,
    activations: Vec<DenseVector<S>>,
    decision_dim: usize,
}

impl<S: Scalar> ForwardTape<S> {
    pub fn input(&self) -> &DenseVector<S> {
        &self.input
    }

    pub fn output(&self) -> &DenseVector<S> {
        self.activations.last().unwrap()
    }

    pub fn decision_dim(&self) -> usize {
        self.decision_dim
    }

    /// Smallest hidden pre-activation magnitude; gradient checks resample
    /// inputs when this gets close to the rectifier kink.
    pub fn min_hidden_preactivation_abs(&self) -> S {
        let hidden = self.pre_activations.len().saturating_sub(1);
        self.pre_activations[..hidden]
            .iter()
            .fold(S::infinity(), |acc, z| {
                z.iter().fold(acc, |a, v| a.min(v.abs()))
            })
    }
}

/// Gradients with the same shape as the owning [`MlpParams`].
#[derive(Clone, Debug, PartialEq)]
pub struct PredictorGradients<S> {
    pub weights: Vec<DenseMatrix<S>>,
    pub biases: Vec<DenseVector<S>>,
}

impl<S: Scalar> PredictorGradients<S> {
    pub fn zeros_like(params: &MlpParams<S>) -> Self {
        Self {
            weights: params
                .weights
                .iter()
                .map(|w| DenseMatrix::zeros(w.rows(), w.cols()))
                .collect(),
            biases: params
                .biases
                .iter()
                .map(|b| DenseVector::zeros(b.len()))
                .collect(),
        }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: S, other: &Self) {
        debug_assert_eq!(self.weights.len(), other.weights.len());
        for (w, o) in self.weights.iter_mut().zip(&other.weights) {
            w.add_scaled(s, o);
        }
        for (b, o) in self.biases.iter_mut().zip(&other.biases) {
            b.axpy(s, o);
        }
    }

    pub fn scale_in_place(&mut self, s: S) {
        for w in &mut self.weights {
            let scaled = w.scale(s);
            *w = scaled;
        }
        for b in &mut self.biases {
            b.scale_in_place(s);
        }
    }

    /// All entries in a fixed order (layer by layer, weights row-major,
    /// then bias), for norms and comparisons.
    pub fn flatten(&self) -> DenseVector<S> {
        let mut out = Vec::new();
        for (w, b) in self.weights.iter().zip(&self.biases) {
            out.extend_from_slice(w.as_slice());
            out.extend_from_slice(b.as_slice());
        }
        DenseVector::from_vec(out)
    }
}

/// Evaluate the model on `[x; v]`, returning the prediction and the tape.
pub fn predictor_forward<S: Scalar>(
    params: &MlpParams<S>,
    x: &DenseVector<S>,
    v: &DenseVector<S>,
) -> Result<(DenseVector<S>, ForwardTape<S>)> {
    if x.len() + v.len() != params.input_dim() {
        return Err(Error::ShapeMismatch {
            context: "predictor_forward",
            expected: format!("input dim {}", params.input_dim()),
            got: format!("{} + {}", x.len(), v.len()),
        });
    }
    let input = x.concat(v);
    let layers = params.num_layers();
    let mut pre_activations = Vec::with_capacity(layers);
    let mut activations = Vec::with_capacity(layers);

    let mut a = input.clone();
    for l in 0..layers {
        let mut z = params.weights[l].matvec(&a);
        z.axpy(S::one(), &params.biases[l]);
        let out = if l + 1 == layers {
            z.map(|zi| params.output.apply(zi))
        } else {
            z.map(|zi| params.activate(zi))
        };
        pre_activations.push(z);
        activations.push(out.clone());
        a = out;
    }

    let tape = ForwardTape {
        input,
        pre_activations,
        activations,
        decision_dim: x.len(),
    };
    Ok((a, tape))
}

/// Jacobian of the prediction with respect to the decision slice of the
/// input, i.e. the first `decision_dim` columns of the full input Jacobian.
pub fn predictor_input_jacobian<S: Scalar>(
    params: &MlpParams<S>,
    tape: &ForwardTape<S>,
) -> DenseMatrix<S> {
    let layers = params.num_layers();
    // forward accumulation: J = D_out W_L D_{L-1} W_{L-1} ... D_1 W_1
    let mut jac = params.weights[0].clone();
    for l in 1..layers {
        let z = &tape.pre_activations[l - 1];
        let mut scaled = jac;
        for i in 0..scaled.rows() {
            let d = params.activate_derivative(z[i]);
            for val in scaled.row_mut(i) {
                *val *= d;
            }
        }
        jac = params.weights[l].matmul(&scaled);
    }
    let z_out = tape.pre_activations.last().unwrap();
    for i in 0..jac.rows() {
        let d = params.output.derivative(z_out[i]);
        if d != S::one() {
            for val in jac.row_mut(i) {
                *val *= d;
            }
        }
    }
    jac.columns(0, tape.decision_dim)
}

/// Vector-Jacobian product `upstream^T . d(prediction)/d(parameters)`:
/// gradients of `upstream . c_hat` with respect to every weight and bias.
pub fn predictor_param_vjp<S: Scalar>(
    params: &MlpParams<S>,
    tape: &ForwardTape<S>,
    upstream: &DenseVector<S>,
) -> PredictorGradients<S> {
    assert_eq!(
        upstream.len(),
        params.output_dim(),
        "upstream adjoint length"
    );
    let layers = params.num_layers();
    let mut grads = PredictorGradients::zeros_like(params);

    let z_out = tape.pre_activations.last().unwrap();
    let mut delta =
        DenseVector::from_fn(upstream.len(), |i| upstream[i] * params.output.derivative(z_out[i]));

    for l in (0..layers).rev() {
        let layer_input = if l == 0 {
            &tape.input
        } else {
            &tape.activations[l - 1]
        };
        let gw = &mut grads.weights[l];
        for i in 0..gw.rows() {
            let di = delta[i];
            if di == S::zero() {
                continue;
            }
            for (g, &a) in gw.row_mut(i).iter_mut().zip(layer_input.iter()) {
                *g += di * a;
            }
        }
        grads.biases[l].axpy(S::one(), &delta);

        if l > 0 {
            let back = params.weights[l].matvec_transpose(&delta);
            let z_prev = &tape.pre_activations[l - 1];
            delta = DenseVector::from_fn(back.len(), |i| {
                back[i] * params.activate_derivative(z_prev[i])
            });
        }
    }
    grads
}
