//! Deterministic actor-critic over continuous powers.
//!
//! The actor maps an observation straight to a power in `(0, P_max)` through
//! a scaled-sigmoid head, eliminating quantization error. The critic is
//! *semi-model-free*: instead of consuming the raw action it reads the
//! top-`I_c` current rates, sorted decreasing — a quantity computed
//! analytically from gains and powers, not learned. The action therefore
//! influences the critic only through the rate model, and the actor gradient
//! chains three pieces:
//!
//! ```text
//! d(critic)/d(theta_actor) =
//!     critic input gradient            (backprop through the critic)
//!   * d(sorted rates)/d(power)         (closed-form SINR derivative)
//!   * d(actor output)/d(theta_actor)   (backprop through the actor)
//! ```
//!
//! The sort's permutation is frozen at the forward pass, so the middle factor
//! is an ordinary Jacobian column. Training exploration adds uniform noise
//! that shrinks as `P_max / k` with the episode index `k`; execution is the
//! bare actor output.

use rand::Rng;

use crate::channel::ChannelState;
use crate::metrics::{PowerAllocation, RateReport};
use crate::neural::{Activation, GradientTape, MlpNetwork, NeuralError};
use crate::topology::NetworkScenario;

use super::LinkId;

/// Sorted top-`I_c` current rates with the frozen sort permutation.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticState {
    /// Non-increasing rates, zero-padded to length `I_c`.
    pub rates: Vec<f64>,
    /// Links behind the non-padded entries, strongest first.
    pub links: Vec<LinkId>,
}

/// Critic input: every link's current rate, sorted decreasing (ties by link
/// index), truncated to `i_c` and zero-padded.
pub fn critic_state(scenario: &NetworkScenario, report: &RateReport, i_c: usize) -> CriticState {
    let k = scenario.users_per_cell();
    let mut order: Vec<usize> = (0..report.rate.len()).collect();
    order.sort_by(|&a, &b| {
        report.rate[b]
            .partial_cmp(&report.rate[a])
            .expect("finite rates")
            .then(a.cmp(&b))
    });
    order.truncate(i_c);
    let mut rates: Vec<f64> = order.iter().map(|&i| report.rate[i]).collect();
    let links: Vec<LinkId> = order.iter().map(|&i| LinkId::new(i / k, i % k)).collect();
    rates.resize(i_c, 0.0);
    CriticState { rates, links }
}

/// Closed-form derivative of `rate(target)` with respect to `power(wrt)`,
/// holding the channel fixed. Capped links have zero derivative.
pub fn rate_power_gradient(
    scenario: &NetworkScenario,
    channel: &ChannelState,
    alloc: &PowerAllocation,
    noise_mw: f64,
    sinr_cap: f64,
    target: LinkId,
    wrt: LinkId,
) -> f64 {
    let (m, j) = (target.cell, target.user);
    let own_gain = channel.gain_at(scenario, m, j, 0);
    let signal = own_gain * alloc.power(m, j);
    let mut denom = own_gain * (alloc.cell_total(m) - alloc.power(m, j)) + noise_mw;
    for slot in 1..scenario.n_tx() {
        denom += channel.gain_at(scenario, m, j, slot) * alloc.cell_total(scenario.tx_cell(m, slot));
    }
    let sinr = signal / denom;
    if sinr >= sinr_cap {
        return 0.0;
    }
    let d_rate_d_sinr = 1.0 / ((1.0 + sinr) * std::f64::consts::LN_2);
    let d_sinr_d_p = if wrt == target {
        own_gain / denom
    } else if wrt.cell == m {
        // Same transmitter: the interfering signal rides the target's own
        // channel.
        -signal * own_gain / (denom * denom)
    } else if let Some(slot) = scenario.slot_of(m, wrt.cell) {
        -signal * channel.gain_at(scenario, m, j, slot) / (denom * denom)
    } else {
        0.0
    };
    d_rate_d_sinr * d_sinr_d_p
}

/// Diagnostics of one slot update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdpgSlotReport {
    /// Mean `1/2 (C - r)^2` before the critic step.
    pub critic_loss: f64,
    /// Critic output at the slot's critic state (before the step).
    pub critic_value: f64,
    /// True when a non-finite gradient forced the update to be dropped.
    pub skipped: bool,
}

/// Borrowed view of everything a slot update needs.
pub struct SlotUpdateContext<'a> {
    pub scenario: &'a NetworkScenario,
    pub channel: &'a ChannelState,
    pub alloc: &'a PowerAllocation,
    pub report: &'a RateReport,
    /// Localized reward per link, canonical link order.
    pub rewards: &'a [f64],
    /// Feature vector per link, canonical link order.
    pub features: &'a [Vec<f64>],
    pub noise_mw: f64,
    pub sinr_cap: f64,
    pub i_c: usize,
}

/// Shared-policy deterministic actor-critic learner.
#[derive(Debug, Clone)]
pub struct DdpgAgent {
    pub actor: MlpNetwork,
    pub critic: MlpNetwork,
    pub lr_actor: f64,
    pub lr_critic: f64,
    pub p_max_mw: f64,
}

impl DdpgAgent {
    /// Actor `input -> ReLU 64 -> ReLU 128 -> scaled sigmoid`, critic
    /// `I_c -> ReLU 64 -> linear`.
    pub fn new(
        input_dim: usize,
        i_c: usize,
        lr_actor: f64,
        lr_critic: f64,
        p_max_mw: f64,
        rng: &mut impl Rng,
    ) -> Result<Self, NeuralError> {
        let actor = MlpNetwork::new(
            &[input_dim, 64, 128, 1],
            &[
                Activation::Relu,
                Activation::Relu,
                Activation::ScaledSigmoid(p_max_mw),
            ],
            rng,
        )?;
        let critic = MlpNetwork::new(
            &[i_c, 64, 1],
            &[Activation::Relu, Activation::Linear],
            rng,
        )?;
        Ok(Self {
            actor,
            critic,
            lr_actor,
            lr_critic,
            p_max_mw,
        })
    }

    pub fn from_networks(
        actor: MlpNetwork,
        critic: MlpNetwork,
        lr_actor: f64,
        lr_critic: f64,
        p_max_mw: f64,
    ) -> Self {
        Self {
            actor,
            critic,
            lr_actor,
            lr_critic,
            p_max_mw,
        }
    }

    /// Power decision for one link. Exploring adds uniform noise with
    /// support `[-P_max/k, P_max/k]` that vanishes as episodes accumulate;
    /// the result is clamped into `[0, P_max]`.
    pub fn act(&self, features: &[f64], episode_k: usize, explore: bool, rng: &mut impl Rng) -> f64 {
        let a = self.actor.infer(features)[0];
        if !explore {
            return a;
        }
        let span = self.p_max_mw / episode_k.max(1) as f64;
        let noise = rng.random_range(-span..span);
        (a + noise).clamp(0.0, self.p_max_mw)
    }

    /// One centralized update from all links of a slot: the critic descends
    /// its regression loss first, then the actor ascends the (updated)
    /// critic through the frozen-sort rate Jacobian.
    pub fn update_slot(&mut self, ctx: &SlotUpdateContext<'_>) -> DdpgSlotReport {
        let n_links = ctx.rewards.len();
        debug_assert_eq!(ctx.features.len(), n_links);
        let cs = critic_state(ctx.scenario, ctx.report, ctx.i_c);

        // Critic regression toward each link's reward. The input is shared,
        // so the summed gradient is the mean residual through one backward.
        let pass = self.critic.forward(&cs.rates);
        let critic_value = pass.output()[0];
        let mean_residual =
            ctx.rewards.iter().map(|r| critic_value - r).sum::<f64>() / n_links as f64;
        let critic_loss = ctx
            .rewards
            .iter()
            .map(|r| 0.5 * (critic_value - r) * (critic_value - r))
            .sum::<f64>()
            / n_links as f64;
        let mut critic_tape = self.critic.backward(&pass, &[1.0]);
        critic_tape.scale(mean_residual);
        if !critic_tape.is_finite() {
            return DdpgSlotReport {
                critic_loss,
                critic_value,
                skipped: true,
            };
        }
        self.critic.adam_step(&critic_tape, self.lr_critic);

        // Sensitivity of the *updated* critic to its rate inputs.
        let pass = self.critic.forward(&cs.rates);
        let input_grad = self.critic.backward(&pass, &[1.0]).input_grad;

        // Chain into each link's actor output and sum the ascent direction.
        let mut actor_tape = GradientTape::zeros_like(&self.actor);
        for link_idx in 0..n_links {
            let wrt = LinkId::new(
                link_idx / ctx.scenario.users_per_cell(),
                link_idx % ctx.scenario.users_per_cell(),
            );
            let mut d_value_d_power = 0.0;
            for (i, target) in cs.links.iter().enumerate() {
                if input_grad[i] != 0.0 {
                    d_value_d_power += input_grad[i]
                        * rate_power_gradient(
                            ctx.scenario,
                            ctx.channel,
                            ctx.alloc,
                            ctx.noise_mw,
                            ctx.sinr_cap,
                            *target,
                            wrt,
                        );
                }
            }
            let pass = self.actor.forward(&ctx.features[link_idx]);
            let tape = self.actor.backward(&pass, &[d_value_d_power]);
            actor_tape.add_assign(&tape);
        }
        actor_tape.scale(-1.0 / n_links as f64); // ascend the mean
        if !actor_tape.is_finite() {
            return DdpgSlotReport {
                critic_loss,
                critic_value,
                skipped: true,
            };
        }
        self.actor.adam_step(&actor_tape, self.lr_actor);

        DdpgSlotReport {
            critic_loss,
            critic_value,
            skipped: false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::ChannelState;
    use crate::metrics::{compute_rates, compute_sinr, rate_report};
    use crate::topology::NetworkScenario;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn one_link_toy(gain: f64) -> NetworkScenario {
        NetworkScenario::from_parts(
            1,
            1,
            0.01,
            1.0,
            vec![[0.0, 0.0]],
            vec![[0.1, 0.0]],
            vec![vec![]],
            vec![gain],
        )
        .unwrap()
    }

    fn two_cell_toy() -> NetworkScenario {
        NetworkScenario::from_parts(
            2,
            1,
            0.01,
            1.0,
            vec![[0.0, 0.0], [2.0, 0.0]],
            vec![[0.1, 0.0], [1.9, 0.0]],
            vec![vec![1], vec![0]],
            vec![1.0, 0.5, 1.0, 0.25],
        )
        .unwrap()
    }

    #[test]
    fn deterministic_action_stays_in_range() {
        let mut r = rng(1);
        let agent = DdpgAgent::new(4, 2, 1e-4, 1e-3, 6309.6, &mut r).unwrap();
        let a = agent.act(&[0.1, -0.5, 0.8, 0.0], 1, false, &mut r);
        assert!(a > 0.0 && a < 6309.6);
    }

    #[test]
    fn early_exploration_clamps_to_the_box() {
        let mut r = rng(2);
        let agent = DdpgAgent::new(2, 2, 1e-4, 1e-3, 100.0, &mut r).unwrap();
        let mut saw_floor = false;
        let mut saw_ceiling = false;
        for _ in 0..2000 {
            let a = agent.act(&[0.3, 0.3], 1, true, &mut r);
            assert!((0.0..=100.0).contains(&a));
            saw_floor |= a == 0.0;
            saw_ceiling |= a == 100.0;
        }
        assert!(saw_floor && saw_ceiling, "episode-1 noise spans the box");
    }

    #[test]
    fn late_exploration_is_nearly_deterministic() {
        let mut r = rng(3);
        let agent = DdpgAgent::new(2, 2, 1e-4, 1e-3, 100.0, &mut r).unwrap();
        let base = agent.act(&[0.3, 0.3], 1, false, &mut r);
        for _ in 0..100 {
            let a = agent.act(&[0.3, 0.3], 1_000_000, true, &mut r);
            assert!((a - base).abs() <= 100.0 / 1_000_000.0);
        }
    }

    #[test]
    fn critic_state_sorts_and_pads() {
        let sc = two_cell_toy();
        let report = compute_rates(&[0.5, 2.0], 1000.0);
        let cs = critic_state(&sc, &report, 4);
        assert_eq!(cs.links, vec![LinkId::new(1, 0), LinkId::new(0, 0)]);
        assert!(cs.rates.windows(2).all(|w| w[0] >= w[1]));
        assert_eq!(cs.rates.len(), 4);
        assert_eq!(cs.rates[2..], [0.0, 0.0]);
    }

    #[test]
    fn one_link_gradient_closed_form() {
        // No interference: rate = log2(1 + g p / noise), so
        // d rate / d p = g / ((noise + g p) ln 2).
        let g = 0.35;
        let sc = one_link_toy(g);
        let ch = ChannelState::unit(&sc);
        let noise = 0.05;
        let p = 1.7;
        let mut alloc = crate::metrics::PowerAllocation::uniform(&sc, p);
        alloc.set_power(0, 0, p);
        let link = LinkId::new(0, 0);
        let got = rate_power_gradient(&sc, &ch, &alloc, noise, 1e12, link, link);
        let expect = g / ((noise + g * p) * std::f64::consts::LN_2);
        assert!((got - expect).abs() < 1e-12);
    }

    #[test]
    fn gradients_match_finite_differences_on_toy() {
        let sc = two_cell_toy();
        let ch = ChannelState::unit(&sc);
        let noise = 0.1;
        let cap = 1e9;
        let base = crate::metrics::PowerAllocation::from_vec(&sc, vec![1.3, 0.8]).unwrap();
        let h = 1e-6;
        for target in [LinkId::new(0, 0), LinkId::new(1, 0)] {
            for wrt in [LinkId::new(0, 0), LinkId::new(1, 0)] {
                let analytic =
                    rate_power_gradient(&sc, &ch, &base, noise, cap, target, wrt);
                let mut plus = base.clone();
                plus.set_power(wrt.cell, wrt.user, base.power(wrt.cell, wrt.user) + h);
                let mut minus = base.clone();
                minus.set_power(wrt.cell, wrt.user, base.power(wrt.cell, wrt.user) - h);
                let rp = compute_rates(&compute_sinr(&sc, &ch, &plus, noise), cap);
                let rm = compute_rates(&compute_sinr(&sc, &ch, &minus, noise), cap);
                let idx = sc.link_index(target.cell, target.user);
                let fd = (rp.rate[idx] - rm.rate[idx]) / (2.0 * h);
                assert!(
                    (analytic - fd).abs() <= 1e-6 * fd.abs().max(1e-3),
                    "target {target:?} wrt {wrt:?}: {analytic} vs {fd}"
                );
            }
        }
    }

    #[test]
    fn capped_links_have_zero_gradient() {
        let sc = one_link_toy(1.0);
        let ch = ChannelState::unit(&sc);
        let alloc = crate::metrics::PowerAllocation::uniform(&sc, 1000.0);
        let link = LinkId::new(0, 0);
        // SINR = 1000 / 0.001 far above a 30 dB cap.
        let g = rate_power_gradient(&sc, &ch, &alloc, 0.001, 1000.0, link, link);
        assert_eq!(g, 0.0);
    }

    #[test]
    fn exact_critic_fit_skips_no_one_and_still_moves_the_actor() {
        let mut r = rng(4);
        let sc = two_cell_toy();
        let ch = ChannelState::unit(&sc);
        let alloc = crate::metrics::PowerAllocation::from_vec(&sc, vec![1.0, 1.0]).unwrap();
        let report = rate_report(&sc, &ch, &alloc, 0.1, 1e9);
        let mut agent = DdpgAgent::new(2, 2, 1e-3, 1e-3, 10.0, &mut r).unwrap();
        let features = vec![vec![0.2, 0.4], vec![0.5, 0.1]];
        let cs = critic_state(&sc, &report, 2);
        let c_out = agent.critic.infer(&cs.rates)[0];
        let rewards = vec![c_out, c_out];

        let critic_before: Vec<f64> = (0..agent.critic.n_parameters())
            .map(|i| agent.critic.get_parameter(i))
            .collect();
        let actor_before: Vec<f64> = (0..agent.actor.n_parameters())
            .map(|i| agent.actor.get_parameter(i))
            .collect();
        let out = agent.update_slot(&SlotUpdateContext {
            scenario: &sc,
            channel: &ch,
            alloc: &alloc,
            report: &report,
            rewards: &rewards,
            features: &features,
            noise_mw: 0.1,
            sinr_cap: 1e9,
            i_c: 2,
        });
        assert!(!out.skipped);
        assert_eq!(out.critic_loss, 0.0);
        for (i, b) in critic_before.iter().enumerate() {
            assert_eq!(agent.critic.get_parameter(i), *b, "critic untouched");
        }
        let moved = (0..agent.actor.n_parameters())
            .any(|i| agent.actor.get_parameter(i) != actor_before[i]);
        assert!(moved, "actor should still take its step");
    }

    #[test]
    fn non_finite_rewards_skip_the_update() {
        let mut r = rng(5);
        let sc = two_cell_toy();
        let ch = ChannelState::unit(&sc);
        let alloc = crate::metrics::PowerAllocation::from_vec(&sc, vec![1.0, 1.0]).unwrap();
        let report = rate_report(&sc, &ch, &alloc, 0.1, 1e9);
        let mut agent = DdpgAgent::new(2, 2, 1e-3, 1e-3, 10.0, &mut r).unwrap();
        let before: Vec<f64> = (0..agent.critic.n_parameters())
            .map(|i| agent.critic.get_parameter(i))
            .collect();
        let out = agent.update_slot(&SlotUpdateContext {
            scenario: &sc,
            channel: &ch,
            alloc: &alloc,
            report: &report,
            rewards: &[f64::NAN, 1.0],
            features: &[vec![0.2, 0.4], vec![0.5, 0.1]],
            noise_mw: 0.1,
            sinr_cap: 1e9,
            i_c: 2,
        });
        assert!(out.skipped);
        for (i, b) in before.iter().enumerate() {
            assert_eq!(agent.critic.get_parameter(i), *b);
        }
    }
}
