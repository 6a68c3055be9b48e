//! SINR, rates and rewards.
//!
//! For downlink `(n, k)` with gains `g` and powers `p`, the
//! signal-to-interference-plus-noise ratio is
//!
//! ```text
//!                   g[n,n,k] p[n,k]
//! sinr[n,k] = -----------------------------------------------------------
//!             sum_{k' != k} g[n,n,k] p[n,k']                (intra-cell)
//!           + sum_{n' in D_n} g[n',n,k] sum_j p[n',j]       (inter-cell)
//!           + noise
//! ```
//!
//! Both interference sums are local: only the serving cell and the
//! neighborhood `D_n` contribute, which is exactly the set of gains the
//! scenario stores. Rates are Shannon capacities of the capped SINR,
//! `rate = log2(1 + min(sinr, cap))`, and the network objective is their sum.
//!
//! The per-link training signal is the localized reward
//!
//! ```text
//! r[n,k] = rate[n,k] + alpha * (co-cell rates + all rates in D_n)
//! ```
//!
//! whose sum over links is proportional to the sum-rate on the symmetric
//! lattice, so maximizing local rewards everywhere maximizes the global
//! objective.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::channel::ChannelState;
use crate::topology::NetworkScenario;

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("allocation shape {got} does not match the scenario's {expected} links")]
    BadShape { expected: usize, got: usize },
    #[error("power {power} mW outside [0, {p_max}] at link ({cell}, {user})")]
    PowerOutOfBounds {
        cell: usize,
        user: usize,
        power: f64,
        p_max: f64,
    },
}

/// Transmit powers in milliwatts, one per downlink.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerAllocation {
    n_cells: usize,
    users_per_cell: usize,
    p: Vec<f64>,
}

impl PowerAllocation {
    /// Every link at the same power.
    pub fn uniform(scenario: &NetworkScenario, power_mw: f64) -> Self {
        Self {
            n_cells: scenario.n_cells(),
            users_per_cell: scenario.users_per_cell(),
            p: vec![power_mw; scenario.n_links()],
        }
    }

    pub fn from_vec(scenario: &NetworkScenario, p: Vec<f64>) -> Result<Self, MetricsError> {
        if p.len() != scenario.n_links() {
            return Err(MetricsError::BadShape {
                expected: scenario.n_links(),
                got: p.len(),
            });
        }
        Ok(Self {
            n_cells: scenario.n_cells(),
            users_per_cell: scenario.users_per_cell(),
            p,
        })
    }

    /// Checks the box constraint `0 <= p <= p_max` on every link.
    pub fn validate(&self, p_max_mw: f64) -> Result<(), MetricsError> {
        for (i, &power) in self.p.iter().enumerate() {
            if !(0.0..=p_max_mw).contains(&power) || !power.is_finite() {
                return Err(MetricsError::PowerOutOfBounds {
                    cell: i / self.users_per_cell,
                    user: i % self.users_per_cell,
                    power,
                    p_max: p_max_mw,
                });
            }
        }
        Ok(())
    }

    pub fn power(&self, cell: usize, user: usize) -> f64 {
        self.p[cell * self.users_per_cell + user]
    }

    pub fn set_power(&mut self, cell: usize, user: usize, power_mw: f64) {
        self.p[cell * self.users_per_cell + user] = power_mw;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.p
    }

    /// Total emitted power of one cell.
    pub fn cell_total(&self, cell: usize) -> f64 {
        let k = self.users_per_cell;
        self.p[cell * k..(cell + 1) * k].iter().sum()
    }
}

/// Per-link SINR and rates plus the network sum-rate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    /// Uncapped linear SINR per link.
    pub sinr: Vec<f64>,
    /// `log2(1 + min(sinr, cap))` per link, bits/s/Hz.
    pub rate: Vec<f64>,
    /// Sum of all rates, bits/s/Hz.
    pub sum_rate: f64,
}

impl RateReport {
    pub fn rate_of(&self, scenario: &NetworkScenario, cell: usize, user: usize) -> f64 {
        self.rate[scenario.link_index(cell, user)]
    }

    /// Network sum-rate divided by the number of links.
    pub fn sum_rate_per_link(&self) -> f64 {
        self.sum_rate / self.rate.len() as f64
    }
}

/// Raw per-link SINR for an allocation. Interference is summed over the
/// serving cell and the stored neighborhood only.
pub fn compute_sinr(
    scenario: &NetworkScenario,
    channel: &ChannelState,
    alloc: &PowerAllocation,
    noise_mw: f64,
) -> Vec<f64> {
    let n = scenario.n_cells();
    let k = scenario.users_per_cell();
    let n_tx = scenario.n_tx();
    let cell_totals: Vec<f64> = (0..n).map(|c| alloc.cell_total(c)).collect();
    let mut sinr = Vec::with_capacity(n * k);
    for cell in 0..n {
        for user in 0..k {
            let own_gain = channel.gain_at(scenario, cell, user, 0);
            let signal = own_gain * alloc.power(cell, user);
            let intra = own_gain * (cell_totals[cell] - alloc.power(cell, user));
            let mut inter = 0.0;
            for slot in 1..n_tx {
                inter +=
                    channel.gain_at(scenario, cell, user, slot) * cell_totals[scenario.tx_cell(cell, slot)];
            }
            let denom = intra + inter + noise_mw;
            sinr.push(if signal == 0.0 { 0.0 } else { signal / denom });
        }
    }
    sinr
}

/// Applies the SINR cap and the Shannon map.
pub fn compute_rates(sinr: &[f64], sinr_cap: f64) -> RateReport {
    let rate: Vec<f64> = sinr
        .iter()
        .map(|&s| (1.0 + s.min(sinr_cap)).log2())
        .collect();
    let sum_rate = rate.iter().sum();
    RateReport {
        sinr: sinr.to_vec(),
        rate,
        sum_rate,
    }
}

/// Convenience: SINR then rates in one call.
pub fn rate_report(
    scenario: &NetworkScenario,
    channel: &ChannelState,
    alloc: &PowerAllocation,
    noise_mw: f64,
    sinr_cap: f64,
) -> RateReport {
    compute_rates(&compute_sinr(scenario, channel, alloc, noise_mw), sinr_cap)
}

/// Localized reward of link `(cell, user)`: its own rate plus `alpha` times
/// every other rate in the serving cell and in the neighborhood `D_cell`.
pub fn local_reward(
    scenario: &NetworkScenario,
    rates: &RateReport,
    cell: usize,
    user: usize,
    alpha: f64,
) -> f64 {
    let k = scenario.users_per_cell();
    let own = rates.rate[scenario.link_index(cell, user)];
    let mut co_cell = 0.0;
    for j in 0..k {
        if j != user {
            co_cell += rates.rate[scenario.link_index(cell, j)];
        }
    }
    let mut neighbors = 0.0;
    for &nc in scenario.neighborhood(cell).expect("valid cell") {
        for j in 0..k {
            neighbors += rates.rate[scenario.link_index(nc, j)];
        }
    }
    own + alpha * (co_cell + neighbors)
}

/// Localized rewards of every link.
pub fn local_rewards(scenario: &NetworkScenario, rates: &RateReport, alpha: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(scenario.n_links());
    for cell in 0..scenario.n_cells() {
        for user in 0..scenario.users_per_cell() {
            out.push(local_reward(scenario, rates, cell, user, alpha));
        }
    }
    out
}
