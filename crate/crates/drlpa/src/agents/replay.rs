//! Experience replay.
//!
//! A fixed-capacity ring of `(state, action, reward)` tuples. There is no
//! next state: with an action-independent environment transition nothing is
//! bootstrapped, so a transition is complete without it. Replay is optional
//! here — temporal correlation in the data is weak — but it reduces
//! run-to-run variance for the discrete learners.

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ReplayError {
    #[error("requested batch of {requested} from a buffer holding {available}")]
    NotEnoughSamples { requested: usize, available: usize },
}

/// One stored interaction. `action` is a level index for discrete learners
/// or a power in milliwatts for the continuous one.
#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub state: Vec<f64>,
    pub action: ActionValue,
    pub reward: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ActionValue {
    Index(usize),
    PowerMw(f64),
}

impl ActionValue {
    pub fn index(self) -> usize {
        match self {
            ActionValue::Index(i) => i,
            ActionValue::PowerMw(_) => panic!("continuous action where an index was expected"),
        }
    }
}

/// Ring buffer with uniform without-replacement sampling.
#[derive(Debug, Clone)]
pub struct ReplayBuffer {
    items: Vec<Transition>,
    capacity: usize,
    cursor: usize,
}

impl ReplayBuffer {
    pub fn new(capacity: usize) -> Self {
        Self {
            items: Vec::with_capacity(capacity.min(1 << 20)),
            capacity,
            cursor: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Appends, overwriting the oldest entry once at capacity.
    pub fn push(&mut self, tr: Transition) {
        if self.items.len() < self.capacity {
            self.items.push(tr);
        } else {
            self.items[self.cursor] = tr;
        }
        self.cursor = (self.cursor + 1) % self.capacity;
    }

    /// Uniform minibatch without replacement.
    pub fn sample(
        &self,
        batch_size: usize,
        rng: &mut impl Rng,
    ) -> Result<Vec<&Transition>, ReplayError> {
        if batch_size > self.items.len() {
            return Err(ReplayError::NotEnoughSamples {
                requested: batch_size,
                available: self.items.len(),
            });
        }
        let picks = rand::seq::index::sample(rng, self.items.len(), batch_size);
        Ok(picks.iter().map(|i| &self.items[i]).collect())
    }
}
