//! Minimal feed-forward network engine.
//!
//! The networks here are tiny (two hidden layers of at most 128 units), so
//! the engine favors exactness and introspection over speed: float64
//! everywhere, explicit backpropagation that also returns the gradient with
//! respect to the *input* (the actor-critic update chains a critic through an
//! analytic rate model into an actor, which needs exactly that), and a plain
//! Adam implementation with bias correction.
//!
//! A training step is three calls:
//!
//! ```text
//! let pass = net.forward(&input);
//! let tape = net.backward(&pass, &output_gradient);
//! net.adam_step(&tape, learning_rate);        // descends the tape
//! ```
//!
//! `adam_step` minimizes; callers that ascend an objective negate the tape
//! first (`tape.scale(-1.0)`).

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

const ADAM_BETA1: f64 = 0.9;
const ADAM_BETA2: f64 = 0.999;
const ADAM_EPS: f64 = 1e-8;

#[derive(Debug, Error, PartialEq)]
pub enum NeuralError {
    #[error("input length {got} does not match layer input {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("gradient tape shape does not match the network")]
    TapeMismatch,
    #[error("operation requires a {expected:?} output head")]
    WrongHead { expected: Activation },
    #[error("network needs at least one layer")]
    Empty,
    #[error("unsupported checkpoint version {0}")]
    BadVersion(u32),
}

/// Layer activation. `ScaledSigmoid(p)` maps pre-activations into `(0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "scale", rename_all = "snake_case")]
pub enum Activation {
    Relu,
    Linear,
    Softmax,
    ScaledSigmoid(f64),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Layer {
    in_dim: usize,
    out_dim: usize,
    /// Row-major `out_dim x in_dim`.
    weights: Vec<f64>,
    bias: Vec<f64>,
    activation: Activation,
}

impl Layer {
    fn pre_activation(&self, input: &[f64], out: &mut Vec<f64>) {
        out.clear();
        for row in 0..self.out_dim {
            let w = &self.weights[row * self.in_dim..(row + 1) * self.in_dim];
            let mut acc = self.bias[row];
            for (wi, xi) in w.iter().zip(input) {
                acc += wi * xi;
            }
            out.push(acc);
        }
    }

    fn activate(&self, pre: &[f64]) -> Vec<f64> {
        match self.activation {
            Activation::Relu => pre.iter().map(|&z| z.max(0.0)).collect(),
            Activation::Linear => pre.to_vec(),
            Activation::ScaledSigmoid(p) => pre.iter().map(|&z| p / (1.0 + (-z).exp())).collect(),
            Activation::Softmax => {
                let m = pre.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let exps: Vec<f64> = pre.iter().map(|&z| (z - m).exp()).collect();
                let sum: f64 = exps.iter().sum();
                exps.into_iter().map(|e| e / sum).collect()
            }
        }
    }

    /// dL/d(pre) from dL/d(output), given cached pre/post activations.
    fn activation_grad(&self, pre: &[f64], post: &[f64], out_grad: &[f64]) -> Vec<f64> {
        match self.activation {
            Activation::Relu => pre
                .iter()
                .zip(out_grad)
                .map(|(&z, &g)| if z > 0.0 { g } else { 0.0 })
                .collect(),
            Activation::Linear => out_grad.to_vec(),
            Activation::ScaledSigmoid(p) => post
                .iter()
                .zip(out_grad)
                .map(|(&y, &g)| g * y * (1.0 - y / p))
                .collect(),
            Activation::Softmax => {
                // dL/dz_i = y_i (g_i - sum_j g_j y_j)
                let dot: f64 = out_grad.iter().zip(post).map(|(g, y)| g * y).sum();
                post.iter().zip(out_grad).map(|(&y, &g)| y * (g - dot)).collect()
            }
        }
    }
}

/// Feed-forward network with per-parameter Adam moment buffers.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MlpNetwork {
    layers: Vec<Layer>,
    adam: AdamState,
}

/// First/second moment estimates, mirroring the parameter shapes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdamState {
    m_w: Vec<Vec<f64>>,
    v_w: Vec<Vec<f64>>,
    m_b: Vec<Vec<f64>>,
    v_b: Vec<Vec<f64>>,
    step: u64,
}

impl AdamState {
    fn zeros(layers: &[Layer]) -> Self {
        Self {
            m_w: layers.iter().map(|l| vec![0.0; l.weights.len()]).collect(),
            v_w: layers.iter().map(|l| vec![0.0; l.weights.len()]).collect(),
            m_b: layers.iter().map(|l| vec![0.0; l.bias.len()]).collect(),
            v_b: layers.iter().map(|l| vec![0.0; l.bias.len()]).collect(),
            step: 0,
        }
    }
}

/// Cached activations of one forward pass; input to [`MlpNetwork::backward`].
#[derive(Debug, Clone)]
pub struct ForwardPass {
    input: Vec<f64>,
    /// Pre-activations per layer.
    pre: Vec<Vec<f64>>,
    /// Post-activations per layer; last entry is the network output.
    post: Vec<Vec<f64>>,
}

impl ForwardPass {
    pub fn output(&self) -> &[f64] {
        self.post.last().expect("non-empty network")
    }

    /// `ln pi(action)` for a softmax head, via shifted log-sum-exp on the
    /// cached logits; stable for any finite pre-activation.
    pub fn log_prob(&self, action: usize) -> f64 {
        let logits = self.pre.last().expect("non-empty network");
        let m = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lse = m + logits.iter().map(|&z| (z - m).exp()).sum::<f64>().ln();
        logits[action] - lse
    }
}

/// Per-parameter gradients plus the gradient with respect to the input.
#[derive(Debug, Clone)]
pub struct GradientTape {
    d_w: Vec<Vec<f64>>,
    d_b: Vec<Vec<f64>>,
    pub input_grad: Vec<f64>,
}

impl GradientTape {
    pub fn zeros_like(net: &MlpNetwork) -> Self {
        Self {
            d_w: net.layers.iter().map(|l| vec![0.0; l.weights.len()]).collect(),
            d_b: net.layers.iter().map(|l| vec![0.0; l.bias.len()]).collect(),
            input_grad: vec![0.0; net.layers[0].in_dim],
        }
    }

    pub fn add_assign(&mut self, other: &GradientTape) {
        for (a, b) in self.d_w.iter_mut().zip(&other.d_w) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        for (a, b) in self.d_b.iter_mut().zip(&other.d_b) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        for (x, y) in self.input_grad.iter_mut().zip(&other.input_grad) {
            *x += y;
        }
    }

    pub fn scale(&mut self, factor: f64) {
        for a in self.d_w.iter_mut().chain(self.d_b.iter_mut()) {
            for x in a.iter_mut() {
                *x *= factor;
            }
        }
        for x in self.input_grad.iter_mut() {
            *x *= factor;
        }
    }

    pub fn is_finite(&self) -> bool {
        self.d_w
            .iter()
            .chain(self.d_b.iter())
            .all(|v| v.iter().all(|x| x.is_finite()))
            && self.input_grad.iter().all(|x| x.is_finite())
    }

    /// Weight gradient `(layer, row, col)`; for tests and inspection.
    pub fn weight_grad(&self, layer: usize, row: usize, col: usize, in_dim: usize) -> f64 {
        self.d_w[layer][row * in_dim + col]
    }

    pub fn bias_grad(&self, layer: usize, row: usize) -> f64 {
        self.d_b[layer][row]
    }
}

impl MlpNetwork {
    /// Builds a network from layer sizes `dims = [in, h1, ..., out]` and one
    /// activation per layer. ReLU layers get He-uniform weights, everything
    /// else Xavier-uniform; biases start at zero.
    pub fn new(
        dims: &[usize],
        activations: &[Activation],
        rng: &mut impl Rng,
    ) -> Result<Self, NeuralError> {
        if dims.len() < 2 || activations.len() != dims.len() - 1 {
            return Err(NeuralError::Empty);
        }
        let mut layers = Vec::with_capacity(activations.len());
        for (i, &act) in activations.iter().enumerate() {
            let (in_dim, out_dim) = (dims[i], dims[i + 1]);
            let limit = match act {
                Activation::Relu => (6.0 / in_dim as f64).sqrt(),
                _ => (6.0 / (in_dim + out_dim) as f64).sqrt(),
            };
            let weights: Vec<f64> = (0..in_dim * out_dim)
                .map(|_| rng.random_range(-limit..limit))
                .collect();
            layers.push(Layer {
                in_dim,
                out_dim,
                weights,
                bias: vec![0.0; out_dim],
                activation: act,
            });
        }
        let adam = AdamState::zeros(&layers);
        Ok(Self { layers, adam })
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].in_dim
    }

    pub fn output_dim(&self) -> usize {
        self.layers.last().expect("non-empty").out_dim
    }

    pub fn n_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn head(&self) -> Activation {
        self.layers.last().expect("non-empty").activation
    }

    pub fn n_parameters(&self) -> usize {
        self.layers.iter().map(|l| l.weights.len() + l.bias.len()).sum()
    }

    pub fn adam_steps(&self) -> u64 {
        self.adam.step
    }

    fn check_input(&self, input: &[f64]) -> Result<(), NeuralError> {
        if input.len() != self.input_dim() {
            return Err(NeuralError::DimensionMismatch {
                expected: self.input_dim(),
                got: input.len(),
            });
        }
        Ok(())
    }

    /// Output without caching; for inference.
    pub fn infer(&self, input: &[f64]) -> Vec<f64> {
        self.check_input(input).expect("input dimension");
        let mut cur = input.to_vec();
        let mut pre = Vec::new();
        for layer in &self.layers {
            layer.pre_activation(&cur, &mut pre);
            cur = layer.activate(&pre);
        }
        cur
    }

    /// Forward pass with cached activations for [`Self::backward`].
    pub fn forward(&self, input: &[f64]) -> ForwardPass {
        self.check_input(input).expect("input dimension");
        let mut pre = Vec::with_capacity(self.layers.len());
        let mut post = Vec::with_capacity(self.layers.len());
        let mut cur = input.to_vec();
        for layer in &self.layers {
            let mut z = Vec::new();
            layer.pre_activation(&cur, &mut z);
            cur = layer.activate(&z);
            pre.push(z);
            post.push(cur.clone());
        }
        ForwardPass {
            input: input.to_vec(),
            pre,
            post,
        }
    }

    /// Backpropagates `dL/d(output)` through the cached pass, filling every
    /// parameter gradient and the gradient with respect to the input.
    pub fn backward(&self, pass: &ForwardPass, output_grad: &[f64]) -> GradientTape {
        assert_eq!(
            output_grad.len(),
            self.output_dim(),
            "output gradient dimension"
        );
        let mut tape = GradientTape::zeros_like(self);
        let mut grad = output_grad.to_vec();
        for (idx, layer) in self.layers.iter().enumerate().rev() {
            let dz = layer.activation_grad(&pass.pre[idx], &pass.post[idx], &grad);
            let below: &[f64] = if idx == 0 { &pass.input } else { &pass.post[idx - 1] };
            let dw = &mut tape.d_w[idx];
            for row in 0..layer.out_dim {
                let g = dz[row];
                let w_row = row * layer.in_dim;
                for col in 0..layer.in_dim {
                    dw[w_row + col] = g * below[col];
                }
                tape.d_b[idx][row] = g;
            }
            // dL/d(below) = W^T dz
            let mut next = vec![0.0; layer.in_dim];
            for row in 0..layer.out_dim {
                let g = dz[row];
                let w_row = &layer.weights[row * layer.in_dim..(row + 1) * layer.in_dim];
                for (n, w) in next.iter_mut().zip(w_row) {
                    *n += w * g;
                }
            }
            grad = next;
        }
        tape.input_grad = grad;
        tape
    }

    /// Gradient of `ln pi(action)` for a softmax head. The logit gradient
    /// collapses to `onehot(action) - pi`, which stays finite even when the
    /// selected probability underflows.
    pub fn backward_log_prob(
        &self,
        pass: &ForwardPass,
        action: usize,
    ) -> Result<GradientTape, NeuralError> {
        if self.head() != Activation::Softmax {
            return Err(NeuralError::WrongHead {
                expected: Activation::Softmax,
            });
        }
        let probs = pass.output();
        let logit_grad: Vec<f64> = probs
            .iter()
            .enumerate()
            .map(|(i, &p)| if i == action { 1.0 - p } else { -p })
            .collect();
        // Bypass the softmax Jacobian: feed the logit gradient through a
        // linear-head view of the last layer.
        let mut view = self.clone();
        view.layers.last_mut().expect("non-empty").activation = Activation::Linear;
        Ok(view.backward(pass, &logit_grad))
    }

    /// One Adam descent step along the tape (beta1 = 0.9, beta2 = 0.999,
    /// eps = 1e-8, bias-corrected).
    pub fn adam_step(&mut self, tape: &GradientTape, learning_rate: f64) {
        self.adam.step += 1;
        let t = self.adam.step as i32;
        let bc1 = 1.0 - ADAM_BETA1.powi(t);
        let bc2 = 1.0 - ADAM_BETA2.powi(t);
        for (idx, layer) in self.layers.iter_mut().enumerate() {
            let update = |param: &mut [f64], grad: &[f64], m: &mut [f64], v: &mut [f64]| {
                for i in 0..param.len() {
                    m[i] = ADAM_BETA1 * m[i] + (1.0 - ADAM_BETA1) * grad[i];
                    v[i] = ADAM_BETA2 * v[i] + (1.0 - ADAM_BETA2) * grad[i] * grad[i];
                    let m_hat = m[i] / bc1;
                    let v_hat = v[i] / bc2;
                    param[i] -= learning_rate * m_hat / (v_hat.sqrt() + ADAM_EPS);
                }
            };
            update(
                &mut layer.weights,
                &tape.d_w[idx],
                &mut self.adam.m_w[idx],
                &mut self.adam.v_w[idx],
            );
            update(
                &mut layer.bias,
                &tape.d_b[idx],
                &mut self.adam.m_b[idx],
                &mut self.adam.v_b[idx],
            );
        }
    }

    /// Plain gradient-descent step; used by closed-form oracles in tests.
    pub fn sgd_step(&mut self, tape: &GradientTape, learning_rate: f64) {
        for (idx, layer) in self.layers.iter_mut().enumerate() {
            for (w, g) in layer.weights.iter_mut().zip(&tape.d_w[idx]) {
                *w -= learning_rate * g;
            }
            for (b, g) in layer.bias.iter_mut().zip(&tape.d_b[idx]) {
                *b -= learning_rate * g;
            }
        }
    }

    /// Flat read access to parameters, in (weights, bias) layer order;
    /// finite-difference checks perturb through these.
    pub fn get_parameter(&self, flat_index: usize) -> f64 {
        let (layer, offset) = self.locate(flat_index);
        if offset < self.layers[layer].weights.len() {
            self.layers[layer].weights[offset]
        } else {
            self.layers[layer].bias[offset - self.layers[layer].weights.len()]
        }
    }

    pub fn set_parameter(&mut self, flat_index: usize, value: f64) {
        let (layer, offset) = self.locate(flat_index);
        if offset < self.layers[layer].weights.len() {
            self.layers[layer].weights[offset] = value;
        } else {
            let w = self.layers[layer].weights.len();
            self.layers[layer].bias[offset - w] = value;
        }
    }

    /// The tape entry matching [`Self::get_parameter`]'s indexing.
    pub fn tape_parameter(&self, tape: &GradientTape, flat_index: usize) -> f64 {
        let (layer, offset) = self.locate(flat_index);
        if offset < self.layers[layer].weights.len() {
            tape.d_w[layer][offset]
        } else {
            tape.d_b[layer][offset - self.layers[layer].weights.len()]
        }
    }

    fn locate(&self, flat_index: usize) -> (usize, usize) {
        let mut rest = flat_index;
        for (i, layer) in self.layers.iter().enumerate() {
            let n = layer.weights.len() + layer.bias.len();
            if rest < n {
                return (i, rest);
            }
            rest -= n;
        }
        panic!("parameter index {flat_index} out of range");
    }

    /// Versioned JSON checkpoint, optionally with optimizer state.
    pub fn to_checkpoint(&self, include_adam: bool) -> NetworkCheckpoint {
        NetworkCheckpoint {
            version: NETWORK_CHECKPOINT_VERSION,
            dims: std::iter::once(self.input_dim())
                .chain(self.layers.iter().map(|l| l.out_dim))
                .collect(),
            activations: self.layers.iter().map(|l| l.activation).collect(),
            weights: self.layers.iter().map(|l| l.weights.clone()).collect(),
            biases: self.layers.iter().map(|l| l.bias.clone()).collect(),
            adam: include_adam.then(|| self.adam.clone()),
        }
    }

    pub fn from_checkpoint(doc: &NetworkCheckpoint) -> Result<Self, NeuralError> {
        if doc.version != NETWORK_CHECKPOINT_VERSION {
            return Err(NeuralError::BadVersion(doc.version));
        }
        if doc.dims.len() < 2 || doc.activations.len() != doc.dims.len() - 1 {
            return Err(NeuralError::Empty);
        }
        let mut layers = Vec::new();
        for i in 0..doc.activations.len() {
            let (in_dim, out_dim) = (doc.dims[i], doc.dims[i + 1]);
            if doc.weights[i].len() != in_dim * out_dim || doc.biases[i].len() != out_dim {
                return Err(NeuralError::TapeMismatch);
            }
            layers.push(Layer {
                in_dim,
                out_dim,
                weights: doc.weights[i].clone(),
                bias: doc.biases[i].clone(),
                activation: doc.activations[i],
            });
        }
        let adam = doc.adam.clone().unwrap_or_else(|| AdamState::zeros(&layers));
        Ok(Self { layers, adam })
    }
}

const NETWORK_CHECKPOINT_VERSION: u32 = 1;

/// Serializable network snapshot: `dims = [in, h1, ..., out]`, one activation
/// per layer, row-major float64 weights.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetworkCheckpoint {
    pub version: u32,
    pub dims: Vec<usize>,
    pub activations: Vec<Activation>,
    pub weights: Vec<Vec<f64>>,
    pub biases: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adam: Option<AdamState>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn zero_net_zero_output() {
        let mut net = MlpNetwork::new(&[3, 2], &[Activation::Linear], &mut rng(0)).unwrap();
        for i in 0..net.n_parameters() {
            net.set_parameter(i, 0.0);
        }
        assert_eq!(net.infer(&[1.0, -2.0, 3.0]), vec![0.0, 0.0]);
    }

    #[test]
    fn softmax_head_normalizes() {
        let net = MlpNetwork::new(
            &[4, 8, 5],
            &[Activation::Relu, Activation::Softmax],
            &mut rng(1),
        )
        .unwrap();
        let y = net.infer(&[0.3, -1.0, 2.0, 0.7]);
        assert!(y.iter().all(|&p| p > 0.0));
        assert!((y.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn scaled_sigmoid_midpoint() {
        let p_max = 6310.0;
        let mut net =
            MlpNetwork::new(&[2, 1], &[Activation::ScaledSigmoid(p_max)], &mut rng(2)).unwrap();
        for i in 0..net.n_parameters() {
            net.set_parameter(i, 0.0);
        }
        // Pre-activation 0 lands exactly on half power.
        let y = net.infer(&[5.0, -3.0]);
        assert!((y[0] - p_max / 2.0).abs() < 1e-9);
    }

    #[test]
    fn linear_layer_closed_form_gradients() {
        // y = Wx + b, upstream u: dW = u x^T, db = u, dx = W^T u.
        let mut net = MlpNetwork::new(&[2, 2], &[Activation::Linear], &mut rng(3)).unwrap();
        let w = [[1.5, -0.5], [2.0, 0.25]];
        net.set_parameter(0, w[0][0]);
        net.set_parameter(1, w[0][1]);
        net.set_parameter(2, w[1][0]);
        net.set_parameter(3, w[1][1]);
        net.set_parameter(4, 0.1);
        net.set_parameter(5, -0.2);
        let x = [0.7, -1.3];
        let u = [2.0, -1.0];
        let pass = net.forward(&x);
        let tape = net.backward(&pass, &u);
        for row in 0..2 {
            for col in 0..2 {
                assert!((tape.weight_grad(0, row, col, 2) - u[row] * x[col]).abs() < 1e-12);
            }
            assert!((tape.bias_grad(0, row) - u[row]).abs() < 1e-12);
        }
        for col in 0..2 {
            let expect = w[0][col] * u[0] + w[1][col] * u[1];
            assert!((tape.input_grad[col] - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn relu_blocks_gradient_at_negative_preactivation() {
        let mut net = MlpNetwork::new(&[1, 1], &[Activation::Relu], &mut rng(4)).unwrap();
        net.set_parameter(0, 1.0);
        net.set_parameter(1, -5.0); // bias forces z < 0 for small inputs
        let pass = net.forward(&[1.0]);
        let tape = net.backward(&pass, &[1.0]);
        assert_eq!(tape.weight_grad(0, 0, 0, 1), 0.0);
        assert_eq!(tape.input_grad[0], 0.0);
    }

    /// Central finite differences over every parameter and the input, against
    /// a linear readout of the outputs.
    fn finite_difference_check(net: &MlpNetwork, input: &[f64], readout: &[f64]) -> f64 {
        let loss = |n: &MlpNetwork, x: &[f64]| -> f64 {
            n.infer(x).iter().zip(readout).map(|(y, c)| y * c).sum()
        };
        let pass = net.forward(input);
        let tape = net.backward(&pass, readout);
        let h = 1e-5;
        let mut worst: f64 = 0.0;
        for i in 0..net.n_parameters() {
            let orig = net.get_parameter(i);
            let mut plus = net.clone();
            plus.set_parameter(i, orig + h);
            let mut minus = net.clone();
            minus.set_parameter(i, orig - h);
            let fd = (loss(&plus, input) - loss(&minus, input)) / (2.0 * h);
            let bp = net.tape_parameter(&tape, i);
            let denom = fd.abs().max(bp.abs()).max(1e-6);
            worst = worst.max((fd - bp).abs() / denom);
        }
        for i in 0..input.len() {
            let mut xp = input.to_vec();
            xp[i] += h;
            let mut xm = input.to_vec();
            xm[i] -= h;
            let fd = (loss(net, &xp) - loss(net, &xm)) / (2.0 * h);
            let denom = fd.abs().max(tape.input_grad[i].abs()).max(1e-6);
            worst = worst.max((fd - tape.input_grad[i]).abs() / denom);
        }
        worst
    }

    #[test]
    fn gradients_match_finite_differences() {
        let archs: Vec<(Vec<usize>, Vec<Activation>)> = vec![
            (vec![3, 4, 2], vec![Activation::Relu, Activation::Linear]),
            (
                vec![5, 8, 6, 3],
                vec![Activation::Relu, Activation::Relu, Activation::Softmax],
            ),
            (
                vec![4, 6, 1],
                vec![Activation::Relu, Activation::ScaledSigmoid(100.0)],
            ),
        ];
        let mut r = rng(5);
        for (dims, acts) in archs {
            let net = MlpNetwork::new(&dims, &acts, &mut r).unwrap();
            let input: Vec<f64> = (0..dims[0]).map(|_| r.random_range(-1.0..1.0)).collect();
            let readout: Vec<f64> = (0..*dims.last().unwrap())
                .map(|_| r.random_range(-1.0..1.0))
                .collect();
            let err = finite_difference_check(&net, &input, &readout);
            assert!(err <= 1e-4, "rel err {err:.2e} for dims {dims:?}");
        }
    }

    #[test]
    fn log_prob_gradient_matches_finite_difference() {
        let mut r = rng(6);
        let net = MlpNetwork::new(
            &[4, 6, 3],
            &[Activation::Relu, Activation::Softmax],
            &mut r,
        )
        .unwrap();
        let input = [0.2, -0.4, 1.1, 0.3];
        let action = 1;
        let pass = net.forward(&input);
        let tape = net.backward_log_prob(&pass, action).unwrap();
        let h = 1e-5;
        for i in 0..net.n_parameters() {
            let orig = net.get_parameter(i);
            let mut plus = net.clone();
            plus.set_parameter(i, orig + h);
            let mut minus = net.clone();
            minus.set_parameter(i, orig - h);
            let fd = (plus.forward(&input).log_prob(action)
                - minus.forward(&input).log_prob(action))
                / (2.0 * h);
            let bp = net.tape_parameter(&tape, i);
            let denom = fd.abs().max(bp.abs()).max(1e-6);
            assert!((fd - bp).abs() / denom <= 1e-4, "param {i}");
        }
    }

    #[test]
    fn log_prob_is_stable_for_extreme_logits() {
        let mut net = MlpNetwork::new(&[1, 2], &[Activation::Softmax], &mut rng(7)).unwrap();
        net.set_parameter(0, 100.0);
        net.set_parameter(1, -100.0);
        let pass = net.forward(&[1.0]);
        assert!(pass.log_prob(0).is_finite());
        assert!(pass.log_prob(1).is_finite());
        assert!(pass.log_prob(1) < -150.0);
        let tape = net.backward_log_prob(&pass, 1).unwrap();
        assert!(tape.is_finite());
    }

    #[test]
    fn adam_first_step_scalar_recursion() {
        // Constant gradient 1 on a scalar parameter: m_hat = 1, v_hat = 1,
        // so the first step moves by lr / (1 + eps).
        let mut net = MlpNetwork::new(&[1, 1], &[Activation::Linear], &mut rng(8)).unwrap();
        net.set_parameter(0, 0.5);
        net.set_parameter(1, 0.0);
        let mut tape = GradientTape::zeros_like(&net);
        tape.d_w[0][0] = 1.0;
        let before = net.get_parameter(0);
        net.adam_step(&tape, 1e-3);
        let moved = before - net.get_parameter(0);
        let expect = 1e-3 / (1.0 + ADAM_EPS);
        assert!((moved - expect).abs() < 1e-12, "moved {moved}");
    }

    #[test]
    fn adam_zero_gradient_keeps_parameters() {
        let mut net = MlpNetwork::new(&[2, 2], &[Activation::Linear], &mut rng(9)).unwrap();
        let snapshot: Vec<f64> = (0..net.n_parameters())
            .map(|i| net.get_parameter(i))
            .collect();
        let tape = GradientTape::zeros_like(&net);
        net.adam_step(&tape, 1e-2);
        for (i, s) in snapshot.iter().enumerate() {
            assert_eq!(net.get_parameter(i), *s);
        }
        assert_eq!(net.adam.step, 1);
    }

    #[test]
    fn deterministic_init_and_update() {
        let build = |seed| {
            let mut net = MlpNetwork::new(
                &[3, 4, 2],
                &[Activation::Relu, Activation::Linear],
                &mut rng(seed),
            )
            .unwrap();
            let pass = net.forward(&[0.1, 0.2, 0.3]);
            let tape = net.backward(&pass, &[1.0, -1.0]);
            net.adam_step(&tape, 1e-3);
            (0..net.n_parameters())
                .map(|i| net.get_parameter(i))
                .collect::<Vec<f64>>()
        };
        assert_eq!(build(42), build(42));
        assert_ne!(build(42), build(43));
    }

    #[test]
    fn checkpoint_round_trip() {
        let mut net = MlpNetwork::new(
            &[4, 8, 3],
            &[Activation::Relu, Activation::Softmax],
            &mut rng(10),
        )
        .unwrap();
        let pass = net.forward(&[0.1, 0.2, 0.3, 0.4]);
        let tape = net.backward(&pass, &[1.0, 0.0, -1.0]);
        net.adam_step(&tape, 1e-3);
        let json = serde_json::to_string(&net.to_checkpoint(true)).unwrap();
        let doc: NetworkCheckpoint = serde_json::from_str(&json).unwrap();
        let back = MlpNetwork::from_checkpoint(&doc).unwrap();
        let x = [0.5, -0.5, 0.25, 0.0];
        assert_eq!(net.infer(&x), back.infer(&x));
        assert_eq!(back.adam.step, 1);
    }

    #[test]
    fn dimension_mismatch_detected() {
        let net = MlpNetwork::new(&[3, 2], &[Activation::Linear], &mut rng(11)).unwrap();
        assert!(net.check_input(&[1.0, 2.0]).is_err());
        assert!(net
            .backward_log_prob(&net.forward(&[1.0, 2.0, 3.0]), 0)
            .is_err());
    }
}
