//! Downlink power allocation in interfering multi-cell networks, learned with
//! deep reinforcement learning.
//!
//! The crate simulates a cellular network in which `N` base stations share one
//! frequency band and each serves `K` access points. Every transmitter picks a
//! downlink power level each time slot; every receiver suffers intra- and
//! inter-cell interference. The global objective is the network sum-rate.
//!
//! What lives where:
//!
//! * [`topology`] — hexagonal cell lattice wrapped on a torus, AP placement,
//!   interference neighborhoods and large-scale fading.
//! * [`channel`] — small-scale Rayleigh fading evolved per slot as a
//!   first-order Gauss–Markov process (Jakes correlation).
//! * [`metrics`] — SINR, per-link rates, sum-rate and the localized reward.
//! * [`neural`] — a minimal feed-forward network with exact backpropagation
//!   and Adam, sized for the tiny architectures used here.
//! * [`agents`] — feature extraction, action codecs, replay buffer and the
//!   three learners (REINFORCE, deep Q-learning, DDPG).
//! * [`trainer`] — episode orchestration (centralized training, distributed
//!   execution), evaluation sweeps, the online tracking controller and a
//!   toy-MDP oracle for the myopic-optimality argument behind the design.
//! * [`baselines`] — maximum-power and random-power benchmark allocators.
//! * [`verify`] — self-contained numeric spot checks (finite differences,
//!   fading correlation, reward proportionality) used by the CLI and tests.
//!
//! The companion guide under `book/` walks through the model and the
//! algorithms; its code snippets compile and run as doctests (see
//! [`book_doctests`]).

pub mod agents;
pub mod baselines;
pub mod channel;
pub mod metrics;
pub mod neural;
pub mod topology;
pub mod trainer;
pub mod units;
pub mod verify;

mod seedmix;

pub use seedmix::derive_seed;

/// Book chapters compiled as doctests so the guide can never drift from the
/// API. Each module's only content is the chapter text; `cargo test --doc`
/// runs every fenced Rust block in it.
pub mod book_doctests {
    #[doc = include_str!("../../../book/src/environment.md")]
    pub mod environment {}

    #[doc = include_str!("../../../book/src/rates-and-rewards.md")]
    pub mod rates_and_rewards {}

    #[doc = include_str!("../../../book/src/neural.md")]
    pub mod neural {}

    #[doc = include_str!("../../../book/src/agents.md")]
    pub mod agents {}

    #[doc = include_str!("../../../book/src/training.md")]
    pub mod training {}
}
