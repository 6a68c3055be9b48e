//! Monte-Carlo policy gradient over the discrete power ladder.
//!
//! The policy network maps an observation to a softmax over the `|A|` power
//! levels. Exploration is the policy itself: actions are sampled from it
//! during training and taken greedily at run time. Each update ascends
//!
//! ```text
//! grad = E[ grad ln pi(a | s) * r_whitened ]
//! ```
//!
//! with the batch rewards whitened to zero mean and unit variance first;
//! without whitening the update is hostage to the reward scale.

use rand::Rng;

use crate::neural::{Activation, GradientTape, MlpNetwork, NeuralError};

const SIGMA_FLOOR: f64 = 1e-8;

/// Whitens a batch of rewards: `(r - mean) / max(std, 1e-8)`. A degenerate
/// batch (all rewards equal) whitens to all zeros.
pub fn whiten_rewards(rewards: &[f64]) -> Vec<f64> {
    if rewards.is_empty() {
        return Vec::new();
    }
    let n = rewards.len() as f64;
    let mean = rewards.iter().sum::<f64>() / n;
    let var = rewards.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>() / n;
    let sigma = var.sqrt().max(SIGMA_FLOOR);
    rewards.iter().map(|r| (r - mean) / sigma).collect()
}

/// Shared-policy REINFORCE learner.
#[derive(Debug, Clone)]
pub struct ReinforceAgent {
    pub policy: MlpNetwork,
    pub learning_rate: f64,
}

impl ReinforceAgent {
    /// Policy network `input -> ReLU 64 -> ReLU 128 -> softmax |A|`.
    pub fn new(
        input_dim: usize,
        n_actions: usize,
        learning_rate: f64,
        rng: &mut impl Rng,
    ) -> Result<Self, NeuralError> {
        let policy = MlpNetwork::new(
            &[input_dim, 64, 128, n_actions],
            &[Activation::Relu, Activation::Relu, Activation::Softmax],
            rng,
        )?;
        Ok(Self {
            policy,
            learning_rate,
        })
    }

    pub fn from_network(policy: MlpNetwork, learning_rate: f64) -> Self {
        Self {
            policy,
            learning_rate,
        }
    }

    /// Samples from the policy when exploring, otherwise takes the mode.
    pub fn act(&self, features: &[f64], explore: bool, rng: &mut impl Rng) -> usize {
        let probs = self.policy.infer(features);
        if explore {
            sample_categorical(&probs, rng)
        } else {
            argmax(&probs)
        }
    }

    /// One ascent step from a batch of `(state, action, reward)` samples.
    /// Returns the surrogate loss `-mean(ln pi(a|s) * r_whitened)`.
    pub fn update_batch(&mut self, batch: &[(Vec<f64>, usize, f64)]) -> f64 {
        if batch.is_empty() {
            return 0.0;
        }
        let rewards: Vec<f64> = batch.iter().map(|(_, _, r)| *r).collect();
        let whitened = whiten_rewards(&rewards);
        let mut total = GradientTape::zeros_like(&self.policy);
        let mut surrogate = 0.0;
        for ((state, action, _), &w) in batch.iter().zip(&whitened) {
            let pass = self.policy.forward(state);
            let mut tape = self
                .policy
                .backward_log_prob(&pass, *action)
                .expect("softmax head");
            tape.scale(w);
            total.add_assign(&tape);
            surrogate -= pass.log_prob(*action) * w;
        }
        let scale = 1.0 / batch.len() as f64;
        total.scale(-scale); // ascend: descend the negated mean
        self.policy.adam_step(&total, self.learning_rate);
        surrogate * scale
    }
}

pub(crate) fn argmax(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| a.partial_cmp(b).expect("finite values"))
        .map(|(i, _)| i)
        .expect("non-empty")
}

pub(crate) fn sample_categorical(probs: &[f64], rng: &mut impl Rng) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    probs.len() - 1
}
