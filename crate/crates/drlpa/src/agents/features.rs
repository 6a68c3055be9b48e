//! Per-link observations.
//!
//! A link `(n, k)` observes the downlinks that can actually interfere with
//! it: every `(n', j)` with `n'` in its own cell or in `D_n`, except itself —
//! `(|D_n| + 1) K - 1` candidates. Each candidate's gain is normalized by the
//! link's own gain and expressed in dB, the candidates are sorted by
//! decreasing strength, and only the strongest `I_c` survive. The surviving
//! index set then gathers the companion vectors: the candidates' previous
//! powers (normalized by the power budget) and, for the `f2` layout, their
//! previous rates.
//!
//! The truncation makes the input dimension independent of the user density,
//! so one trained network serves any `K`.

use crate::channel::ChannelState;
use crate::metrics::{PowerAllocation, RateReport};
use crate::topology::NetworkScenario;
use crate::units::linear_to_db;

use super::{FeatureKind, LinkId};

/// Features are clamped to this band in dB; candidates below it (including
/// exact zeros of `|h|^2`) saturate at the floor.
pub const GAIN_DB_FLOOR: f64 = -200.0;
pub const GAIN_DB_CEIL: f64 = 200.0;

/// Sorted, truncated observation of one link at one slot.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentObservation {
    /// Interferer gains over own gain, dB, non-increasing, length `I_c`.
    pub gamma_db: Vec<f64>,
    /// Previous-slot powers of the retained links over `P_max`, length `I_c`.
    pub prev_power: Vec<f64>,
    /// Previous-slot rates of the retained links (only for `f2`), length `I_c`.
    pub prev_rate: Option<Vec<f64>>,
    /// Identities of the retained links, strongest first; shorter than `I_c`
    /// when the candidate set was padded.
    pub index_set: Vec<LinkId>,
    /// Number of padded tail slots.
    pub padding: usize,
}

impl AgentObservation {
    /// Flat network input: `[gamma_db, prev_power]` or
    /// `[gamma_db, prev_power, prev_rate]`.
    pub fn feature_vector(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.gamma_db.len() * 3);
        v.extend_from_slice(&self.gamma_db);
        v.extend_from_slice(&self.prev_power);
        if let Some(rates) = &self.prev_rate {
            v.extend_from_slice(rates);
        }
        v
    }
}

/// Builds [`AgentObservation`]s for a fixed layout.
#[derive(Debug, Clone, Copy)]
pub struct FeatureExtractor {
    pub i_c: usize,
    pub kind: FeatureKind,
    pub p_max_mw: f64,
}

impl FeatureExtractor {
    pub fn new(i_c: usize, kind: FeatureKind, p_max_mw: f64) -> Self {
        Self { i_c, kind, p_max_mw }
    }

    pub fn input_dim(&self) -> usize {
        self.kind.input_dim(self.i_c)
    }

    /// Observation of link `(cell, user)` given the current channel and the
    /// previous slot's allocation and rates.
    pub fn observe(
        &self,
        scenario: &NetworkScenario,
        channel: &ChannelState,
        prev_alloc: &PowerAllocation,
        prev_rates: &RateReport,
        cell: usize,
        user: usize,
    ) -> AgentObservation {
        let own_gain = channel.gain_at(scenario, cell, user, 0);
        let k = scenario.users_per_cell();

        let mut candidates: Vec<(f64, LinkId)> = Vec::with_capacity(scenario.n_tx() * k);
        for slot in 0..scenario.n_tx() {
            let tx = scenario.tx_cell(cell, slot);
            let gain = channel.gain_at(scenario, cell, user, slot);
            let ratio_db = if own_gain > 0.0 && gain > 0.0 {
                linear_to_db(gain / own_gain)
            } else {
                GAIN_DB_FLOOR
            }
            .clamp(GAIN_DB_FLOOR, GAIN_DB_CEIL);
            for j in 0..k {
                if tx == cell && j == user {
                    continue;
                }
                candidates.push((ratio_db, LinkId::new(tx, j)));
            }
        }
        // Strongest first; equal strengths resolve by (cell, user) ascending
        // so the ordering is reproducible.
        candidates.sort_by(|a, b| {
            b.0.partial_cmp(&a.0)
                .expect("finite dB values")
                .then(a.1.cmp(&b.1))
        });
        candidates.truncate(self.i_c);

        let padding = self.i_c - candidates.len();
        let mut gamma_db = Vec::with_capacity(self.i_c);
        let mut prev_power = Vec::with_capacity(self.i_c);
        let mut prev_rate = (self.kind == FeatureKind::F2).then(|| Vec::with_capacity(self.i_c));
        let mut index_set = Vec::with_capacity(candidates.len());
        for (db, link) in &candidates {
            gamma_db.push(*db);
            prev_power.push(prev_alloc.power(link.cell, link.user) / self.p_max_mw);
            if let Some(r) = &mut prev_rate {
                r.push(prev_rates.rate_of(scenario, link.cell, link.user));
            }
            index_set.push(*link);
        }
        for _ in 0..padding {
            gamma_db.push(GAIN_DB_FLOOR);
            prev_power.push(0.0);
            if let Some(r) = &mut prev_rate {
                r.push(0.0);
            }
        }

        AgentObservation {
            gamma_db,
            prev_power,
            prev_rate,
            index_set,
            padding,
        }
    }
}
