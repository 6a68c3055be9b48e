//! Agents: what a link observes, how actions map to powers, and the three
//! learning algorithms.
//!
//! Every downlink runs the *same* policy ("centralized training, distributed
//! execution"): during training all links' transitions update one shared
//! parameter set; at run time each link evaluates the shared network on its
//! own local observation only.
//!
//! A learner is one of:
//!
//! * [`ReinforceAgent`] — stochastic softmax policy, Monte-Carlo policy
//!   gradient with reward whitening;
//! * [`DqlAgent`] — Q network over the discrete power levels, regressing
//!   `Q(s, a)` onto the immediate reward with an epsilon-greedy schedule;
//! * [`DdpgAgent`] — deterministic continuous actor plus a semi-model-free
//!   critic that reads analytically computed sorted rates.
//!
//! None of the learners bootstraps a next-state value: the environment's
//! state transition does not depend on the chosen powers, so greedy one-step
//! optimization is exactly optimal (see `trainer::toy_mdp`) and every
//! regression target is an immediate reward.

mod codec;
mod ddpg;
mod dql;
mod features;
mod reinforce;
mod replay;

pub use codec::{ActionCodec, CodecError};
pub use ddpg::{
    critic_state, rate_power_gradient, CriticState, DdpgAgent, DdpgSlotReport, SlotUpdateContext,
};
pub use dql::{epsilon_schedule, DqlAgent};
pub use features::{AgentObservation, FeatureExtractor};
pub use reinforce::{whiten_rewards, ReinforceAgent};
pub use replay::{ActionValue, ReplayBuffer, ReplayError, Transition};

use serde::{Deserialize, Serialize};

use crate::neural::NetworkCheckpoint;

/// Identity of one downlink `(cell, user)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinkId {
    pub cell: usize,
    pub user: usize,
}

impl LinkId {
    pub fn new(cell: usize, user: usize) -> Self {
        Self { cell, user }
    }
}

/// Observation layout fed to the networks.
///
/// `F1` is sorted normalized gains plus previous powers (`2 I_c` inputs);
/// `F2` additionally carries the previous rates of the same links (`3 I_c`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureKind {
    F1,
    F2,
}

impl FeatureKind {
    pub fn input_dim(self, i_c: usize) -> usize {
        match self {
            FeatureKind::F1 => 2 * i_c,
            FeatureKind::F2 => 3 * i_c,
        }
    }
}

impl std::str::FromStr for FeatureKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "f1" => Ok(FeatureKind::F1),
            "f2" => Ok(FeatureKind::F2),
            other => Err(format!("unknown feature kind '{other}' (expected f1 or f2)")),
        }
    }
}

/// Which decision rule drives the power allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AgentKind {
    Reinforce,
    Dql,
    Ddpg,
    MaxPower,
    RandomPower,
}

impl AgentKind {
    pub fn is_learner(self) -> bool {
        matches!(self, AgentKind::Reinforce | AgentKind::Dql | AgentKind::Ddpg)
    }
}

impl std::str::FromStr for AgentKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reinforce" => Ok(AgentKind::Reinforce),
            "dql" => Ok(AgentKind::Dql),
            "ddpg" => Ok(AgentKind::Ddpg),
            "max_power" => Ok(AgentKind::MaxPower),
            "random" | "random_power" => Ok(AgentKind::RandomPower),
            other => Err(format!(
                "unknown agent '{other}' (expected reinforce, dql, ddpg, max_power or random)"
            )),
        }
    }
}

impl std::fmt::Display for AgentKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            AgentKind::Reinforce => "reinforce",
            AgentKind::Dql => "dql",
            AgentKind::Ddpg => "ddpg",
            AgentKind::MaxPower => "max_power",
            AgentKind::RandomPower => "random_power",
        };
        f.write_str(s)
    }
}

pub const AGENT_CHECKPOINT_VERSION: u32 = 1;

/// Everything needed to resume or deploy an agent: network weights, codec
/// configuration, feature layout and schedule position.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AgentCheckpoint {
    pub version: u32,
    pub kind: AgentKind,
    pub feature: FeatureKind,
    pub i_c: usize,
    pub n_levels: usize,
    pub p_min_mw: f64,
    pub p_max_mw: f64,
    /// Episodes already trained; exploration schedules resume here.
    pub trained_episodes: usize,
    /// `[policy]`, `[q]` or `[actor, critic]` depending on `kind`.
    pub networks: Vec<NetworkCheckpoint>,
}
