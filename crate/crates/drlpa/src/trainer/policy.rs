//! Deployable policies: one enum over the three learners and the two
//! trivial baselines, plus the metadata needed to run them on a network.

use rand::Rng;

use crate::agents::{
    ActionCodec, AgentCheckpoint, AgentKind, DdpgAgent, DqlAgent, FeatureExtractor, FeatureKind,
    ReinforceAgent, AGENT_CHECKPOINT_VERSION,
};
use crate::channel::ChannelState;
use crate::metrics::{PowerAllocation, RateReport};
use crate::neural::MlpNetwork;
use crate::topology::NetworkScenario;

use super::{TrainError, TrainConfig};

/// The decision rule itself.
#[derive(Debug, Clone)]
pub enum PowerPolicy {
    Reinforce(ReinforceAgent),
    Dql(DqlAgent),
    Ddpg(DdpgAgent),
    MaxPower,
    RandomPower,
}

impl PowerPolicy {
    pub fn kind(&self) -> AgentKind {
        match self {
            PowerPolicy::Reinforce(_) => AgentKind::Reinforce,
            PowerPolicy::Dql(_) => AgentKind::Dql,
            PowerPolicy::Ddpg(_) => AgentKind::Ddpg,
            PowerPolicy::MaxPower => AgentKind::MaxPower,
            PowerPolicy::RandomPower => AgentKind::RandomPower,
        }
    }
}

/// A policy bundled with its observation layout and codec; everything a
/// distributed executor needs.
#[derive(Debug, Clone)]
pub struct DeployedAgent {
    pub policy: PowerPolicy,
    pub feature: FeatureKind,
    pub i_c: usize,
    pub codec: ActionCodec,
    pub p_min_mw: f64,
    pub p_max_mw: f64,
    pub trained_episodes: usize,
}

impl DeployedAgent {
    /// Fresh learner (or baseline) per the training configuration.
    pub fn init(config: &TrainConfig, rng: &mut impl Rng) -> Result<Self, TrainError> {
        let p_min = config.sim.p_min_mw();
        let p_max = config.sim.p_max_mw();
        let input_dim = config.feature.input_dim(config.sim.i_c);
        let codec = match config.agent {
            AgentKind::Reinforce | AgentKind::Dql => {
                ActionCodec::discrete(config.n_levels, p_min, p_max)
                    .map_err(|e| TrainError::Config(e.to_string()))?
            }
            _ => ActionCodec::continuous(p_max),
        };
        let policy = match config.agent {
            AgentKind::Reinforce => PowerPolicy::Reinforce(
                ReinforceAgent::new(input_dim, config.n_levels, config.learning_rate, rng)
                    .map_err(|e| TrainError::Config(e.to_string()))?,
            ),
            AgentKind::Dql => PowerPolicy::Dql(
                DqlAgent::new(input_dim, config.n_levels, config.learning_rate, rng)
                    .map_err(|e| TrainError::Config(e.to_string()))?,
            ),
            AgentKind::Ddpg => PowerPolicy::Ddpg(
                DdpgAgent::new(
                    input_dim,
                    config.sim.i_c,
                    config.learning_rate,
                    config.learning_rate_critic,
                    p_max,
                    rng,
                )
                .map_err(|e| TrainError::Config(e.to_string()))?,
            ),
            AgentKind::MaxPower => PowerPolicy::MaxPower,
            AgentKind::RandomPower => PowerPolicy::RandomPower,
        };
        Ok(Self {
            policy,
            feature: config.feature,
            i_c: config.sim.i_c,
            codec,
            p_min_mw: p_min,
            p_max_mw: p_max,
            trained_episodes: 0,
        })
    }

    /// Trivial baseline without any network.
    pub fn baseline(kind: AgentKind, p_min_mw: f64, p_max_mw: f64) -> Self {
        let policy = match kind {
            AgentKind::MaxPower => PowerPolicy::MaxPower,
            AgentKind::RandomPower => PowerPolicy::RandomPower,
            other => panic!("{other} is not a baseline"),
        };
        Self {
            policy,
            feature: FeatureKind::F1,
            i_c: 16,
            codec: ActionCodec::continuous(p_max_mw),
            p_min_mw,
            p_max_mw,
            trained_episodes: 0,
        }
    }

    pub fn extractor(&self) -> FeatureExtractor {
        FeatureExtractor::new(self.i_c, self.feature, self.p_max_mw)
    }

    /// Greedy decision from a raw feature vector (distributed execution:
    /// no exploration, no learning). Baselines ignore the features.
    pub fn decide(&self, features: &[f64], rng: &mut impl Rng) -> f64 {
        match &self.policy {
            PowerPolicy::Reinforce(agent) => {
                let idx = agent.act(features, false, rng);
                self.codec.power_of_index(idx).expect("codec matches net")
            }
            PowerPolicy::Dql(agent) => {
                let idx = agent.select(features, 0.0, rng);
                self.codec.power_of_index(idx).expect("codec matches net")
            }
            PowerPolicy::Ddpg(agent) => agent.act(features, 1, false, rng),
            PowerPolicy::MaxPower => self.p_max_mw,
            PowerPolicy::RandomPower => rng.random_range(0.0..=self.p_max_mw),
        }
    }

    /// Observation plus decision for one link.
    pub fn decide_link(
        &self,
        scenario: &NetworkScenario,
        channel: &ChannelState,
        prev_alloc: &PowerAllocation,
        prev_rates: &RateReport,
        cell: usize,
        user: usize,
        rng: &mut impl Rng,
    ) -> f64 {
        let obs = self
            .extractor()
            .observe(scenario, channel, prev_alloc, prev_rates, cell, user);
        self.decide(&obs.feature_vector(), rng)
    }

    /// Versioned checkpoint with optimizer state included.
    pub fn to_checkpoint(&self) -> AgentCheckpoint {
        let networks = match &self.policy {
            PowerPolicy::Reinforce(a) => vec![a.policy.to_checkpoint(true)],
            PowerPolicy::Dql(a) => vec![a.q_net.to_checkpoint(true)],
            PowerPolicy::Ddpg(a) => {
                vec![a.actor.to_checkpoint(true), a.critic.to_checkpoint(true)]
            }
            PowerPolicy::MaxPower | PowerPolicy::RandomPower => Vec::new(),
        };
        AgentCheckpoint {
            version: AGENT_CHECKPOINT_VERSION,
            kind: self.policy.kind(),
            feature: self.feature,
            i_c: self.i_c,
            n_levels: self.codec.n_levels(),
            p_min_mw: self.p_min_mw,
            p_max_mw: self.p_max_mw,
            trained_episodes: self.trained_episodes,
            networks,
        }
    }

    /// Restores a deployable agent. Learning rates are not part of the
    /// checkpoint; resuming training re-applies the configured rates.
    pub fn from_checkpoint(doc: &AgentCheckpoint) -> Result<Self, TrainError> {
        if doc.version != AGENT_CHECKPOINT_VERSION {
            return Err(TrainError::Config(format!(
                "unsupported agent checkpoint version {}",
                doc.version
            )));
        }
        let net = |i: usize| -> Result<MlpNetwork, TrainError> {
            let ckpt = doc
                .networks
                .get(i)
                .ok_or_else(|| TrainError::Config("missing network in checkpoint".into()))?;
            MlpNetwork::from_checkpoint(ckpt).map_err(|e| TrainError::Config(e.to_string()))
        };
        let policy = match doc.kind {
            AgentKind::Reinforce => PowerPolicy::Reinforce(ReinforceAgent::from_network(net(0)?, 1e-4)),
            AgentKind::Dql => PowerPolicy::Dql(DqlAgent::from_network(net(0)?, 1e-3)),
            AgentKind::Ddpg => PowerPolicy::Ddpg(DdpgAgent::from_networks(
                net(0)?,
                net(1)?,
                1e-4,
                1e-3,
                doc.p_max_mw,
            )),
            AgentKind::MaxPower => PowerPolicy::MaxPower,
            AgentKind::RandomPower => PowerPolicy::RandomPower,
        };
        let codec = if doc.kind == AgentKind::Ddpg || !doc.kind.is_learner() {
            ActionCodec::continuous(doc.p_max_mw)
        } else {
            ActionCodec::discrete(doc.n_levels, doc.p_min_mw, doc.p_max_mw)
                .map_err(|e| TrainError::Config(e.to_string()))?
        };
        Ok(Self {
            policy,
            feature: doc.feature,
            i_c: doc.i_c,
            codec,
            p_min_mw: doc.p_min_mw,
            p_max_mw: doc.p_max_mw,
            trained_episodes: doc.trained_episodes,
        })
    }
}
