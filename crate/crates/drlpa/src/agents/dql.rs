//! Deep Q-learning over the discrete power ladder.
//!
//! The Q network maps an observation to one value per power level. Because
//! the target is the immediate reward — no discounted bootstrap — each update
//! is a plain regression step on the selected action's output unit:
//!
//! ```text
//! loss = 1/2 (Q(s, a) - r)^2,    grad = (Q(s, a) - r) * dQ(s, a)/dtheta
//! ```
//!
//! Exploration is epsilon-greedy with epsilon interpolated linearly across
//! episodes from its initial to its final value.

use rand::Rng;

use crate::neural::{Activation, GradientTape, MlpNetwork, NeuralError};

use super::reinforce::argmax;

/// Linear exploration schedule across episodes `k = 1..=n_episodes`.
pub fn epsilon_schedule(k: usize, n_episodes: usize, eps_first: f64, eps_last: f64) -> f64 {
    if n_episodes <= 1 {
        return eps_first;
    }
    eps_first + (k - 1) as f64 / (n_episodes - 1) as f64 * (eps_last - eps_first)
}

/// Shared-policy Q learner.
#[derive(Debug, Clone)]
pub struct DqlAgent {
    pub q_net: MlpNetwork,
    pub learning_rate: f64,
}

impl DqlAgent {
    /// Q network `input -> ReLU 64 -> ReLU 128 -> linear |A|`.
    pub fn new(
        input_dim: usize,
        n_actions: usize,
        learning_rate: f64,
        rng: &mut impl Rng,
    ) -> Result<Self, NeuralError> {
        let q_net = MlpNetwork::new(
            &[input_dim, 64, 128, n_actions],
            &[Activation::Relu, Activation::Relu, Activation::Linear],
            rng,
        )?;
        Ok(Self {
            q_net,
            learning_rate,
        })
    }

    pub fn from_network(q_net: MlpNetwork, learning_rate: f64) -> Self {
        Self {
            q_net,
            learning_rate,
        }
    }

    /// Epsilon-greedy selection: uniform with probability `epsilon`, else
    /// the argmax of the Q values.
    pub fn select(&self, features: &[f64], epsilon: f64, rng: &mut impl Rng) -> usize {
        if epsilon > 0.0 && rng.random::<f64>() < epsilon {
            rng.random_range(0..self.q_net.output_dim())
        } else {
            argmax(&self.q_net.infer(features))
        }
    }

    /// Gradient of `1/2 (Q(s,a) - r)^2`; only the selected output unit
    /// receives upstream signal. Also returns the loss.
    pub fn gradient(&self, state: &[f64], action: usize, reward: f64) -> (GradientTape, f64) {
        let pass = self.q_net.forward(state);
        let q = pass.output()[action];
        let residual = q - reward;
        let mut upstream = vec![0.0; self.q_net.output_dim()];
        upstream[action] = residual;
        let tape = self.q_net.backward(&pass, &upstream);
        (tape, 0.5 * residual * residual)
    }

    /// One descent step from a batch; returns the mean loss.
    pub fn update_batch(&mut self, batch: &[(Vec<f64>, usize, f64)]) -> f64 {
        if batch.is_empty() {
            return 0.0;
        }
        let mut total = GradientTape::zeros_like(&self.q_net);
        let mut loss = 0.0;
        for (state, action, reward) in batch {
            let (tape, l) = self.gradient(state, *action, *reward);
            total.add_assign(&tape);
            loss += l;
        }
        let scale = 1.0 / batch.len() as f64;
        total.scale(scale);
        self.q_net.adam_step(&total, self.learning_rate);
        loss * scale
    }
}
