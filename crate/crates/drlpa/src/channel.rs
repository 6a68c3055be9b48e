//! Small-scale fading.
//!
//! Per-link Rayleigh fading follows the Jakes temporal model: the complex
//! coefficient of every stored link evolves as a first-order Gauss-Markov
//! process
//!
//! ```text
//! h[1] ~ CN(0, 1),    h[t] = rho * h[t-1] + n[t],    n[t] ~ CN(0, 1 - rho^2)
//! ```
//!
//! with correlation `rho = J0(2 pi f_d T_s)` set by the Doppler frequency and
//! the slot duration. The recursion preserves the unit-variance stationary
//! law, so `E[|h|^2] = 1` at every slot. Instantaneous link gains combine
//! small- and large-scale fading as `g = |h|^2 * beta`.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

use crate::topology::NetworkScenario;
use crate::units::linear_to_db;

#[derive(Debug, Error, PartialEq)]
pub enum ChannelError {
    #[error("slot duration must be positive, got {0}")]
    BadSlotDuration(f64),
    #[error("doppler frequency must be non-negative, got {0}")]
    BadDoppler(f64),
}

/// Zero-order Bessel function of the first kind.
///
/// Power series below `|x| < 12`, Hankel asymptotic expansion beyond; both
/// branches are accurate to better than 1e-9 for `|x| <= 20`.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x < 12.0 {
        // J0(x) = sum_m (-1)^m (x^2/4)^m / (m!)^2
        let q = x * x / 4.0;
        let mut term = 1.0;
        let mut sum = 1.0;
        for m in 1..200 {
            term *= -q / ((m * m) as f64);
            sum += term;
            if term.abs() < 1e-18 {
                break;
            }
        }
        sum
    } else {
        // J0(x) = sqrt(2/(pi x)) (P(x) cos chi - Q(x) sin chi), chi = x - pi/4,
        // with P, Q the Hankel series in 1/x truncated at their smallest term.
        let mut p = 0.0;
        let mut q = 0.0;
        // u_m = (0, m) Hankel symbol; u_m / x^m alternates into P (even m)
        // and Q (odd m).
        let mut u = 1.0f64;
        let mut x_pow = 1.0f64;
        let mut last = f64::INFINITY;
        for m in 0..40u32 {
            let term = u / x_pow;
            if term.abs() > last {
                break; // asymptotic tail started growing
            }
            last = term.abs();
            if m % 2 == 0 {
                if (m / 2) % 2 == 0 {
                    p += term;
                } else {
                    p -= term;
                }
            } else if ((m - 1) / 2) % 2 == 0 {
                q += term;
            } else {
                q -= term;
            }
            let mf = (m + 1) as f64;
            u *= -((2.0 * mf - 1.0) * (2.0 * mf - 1.0)) / (8.0 * mf);
            x_pow *= x;
            if last < 1e-18 {
                break;
            }
        }
        let chi = x - std::f64::consts::FRAC_PI_4;
        (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
    }
}

/// Instantaneous fading state of every stored link.
#[derive(Debug, Clone)]
pub struct ChannelState {
    /// Complex small-scale coefficients, same layout as the scenario's gains.
    h: Vec<Complex64>,
    /// Linear power gains `|h|^2 * beta`.
    g: Vec<f64>,
    slot: usize,
    rho: f64,
}

impl ChannelState {
    pub fn slot(&self) -> usize {
        self.slot
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Gain of transmitter slot `slot` toward receiver `(cell, user)`.
    pub fn gain_at(&self, scenario: &NetworkScenario, cell: usize, user: usize, slot: usize) -> f64 {
        self.g[scenario.link_index(cell, user) * scenario.n_tx() + slot]
    }

    /// Gain from `tx_cell` to receiver `(rx_cell, user)` if stored.
    pub fn gain(&self, scenario: &NetworkScenario, tx_cell: usize, rx_cell: usize, user: usize) -> Option<f64> {
        scenario
            .slot_of(rx_cell, tx_cell)
            .map(|s| self.gain_at(scenario, rx_cell, user, s))
    }

    pub fn coefficient_at(
        &self,
        scenario: &NetworkScenario,
        cell: usize,
        user: usize,
        slot: usize,
    ) -> Complex64 {
        self.h[scenario.link_index(cell, user) * scenario.n_tx() + slot]
    }

    /// Deterministic unit channel (`h = 1`, so `g = beta`); handy for toy
    /// scenarios where gains are dialed in through `beta` directly.
    pub fn unit(scenario: &NetworkScenario) -> Self {
        let n = scenario.n_links() * scenario.n_tx();
        let h = vec![Complex64::new(1.0, 0.0); n];
        let mut state = Self {
            h,
            g: vec![0.0; n],
            slot: 1,
            rho: 1.0,
        };
        state.recompute_gains(scenario);
        state
    }

    /// Replaces a single coefficient; for perturbation tests.
    pub fn set_coefficient(
        &mut self,
        scenario: &NetworkScenario,
        cell: usize,
        user: usize,
        slot: usize,
        value: Complex64,
    ) {
        let idx = scenario.link_index(cell, user) * scenario.n_tx() + slot;
        self.h[idx] = value;
        self.g[idx] = value.norm_sqr() * scenario.beta_at(cell, user, slot);
    }

    fn recompute_gains(&mut self, scenario: &NetworkScenario) {
        let n_tx = scenario.n_tx();
        for cell in 0..scenario.n_cells() {
            for user in 0..scenario.users_per_cell() {
                let base = scenario.link_index(cell, user) * n_tx;
                for slot in 0..n_tx {
                    self.g[base + slot] =
                        self.h[base + slot].norm_sqr() * scenario.beta_at(cell, user, slot);
                }
            }
        }
    }

    /// Advances the Gauss-Markov recursion by one slot.
    pub fn step(&mut self, scenario: &NetworkScenario, rng: &mut impl Rng) {
        let sigma = ((1.0 - self.rho * self.rho) / 2.0).max(0.0).sqrt();
        let innov = Normal::new(0.0, 1.0).expect("unit normal");
        for h in &mut self.h {
            let n = Complex64::new(sigma * innov.sample(rng), sigma * innov.sample(rng));
            *h = self.rho * *h + n;
        }
        self.slot += 1;
        self.recompute_gains(scenario);
    }

    /// Appends one CSV row per stored link for the current slot:
    /// `slot,tx_cell,rx_cell,user,h_sq,g_db`.
    pub fn append_trace_csv(
        &self,
        scenario: &NetworkScenario,
        out: &mut impl std::io::Write,
    ) -> std::io::Result<()> {
        for cell in 0..scenario.n_cells() {
            for user in 0..scenario.users_per_cell() {
                for slot in 0..scenario.n_tx() {
                    let h = self.coefficient_at(scenario, cell, user, slot);
                    writeln!(
                        out,
                        "{},{},{},{},{:.6e},{:.4}",
                        self.slot,
                        scenario.tx_cell(cell, slot),
                        cell,
                        user,
                        h.norm_sqr(),
                        linear_to_db(self.gain_at(scenario, cell, user, slot)),
                    )?;
                }
            }
        }
        Ok(())
    }
}

/// Draws the initial fading state: i.i.d. circularly-symmetric unit-variance
/// coefficients at slot 1, with `rho = J0(2 pi f_d T_s)`.
pub fn init_channel(
    scenario: &NetworkScenario,
    f_d_hz: f64,
    t_s_sec: f64,
    rng_seed: u64,
) -> Result<ChannelState, ChannelError> {
    if !(t_s_sec > 0.0) {
        return Err(ChannelError::BadSlotDuration(t_s_sec));
    }
    if !(f_d_hz >= 0.0) {
        return Err(ChannelError::BadDoppler(f_d_hz));
    }
    let rho = bessel_j0(std::f64::consts::TAU * f_d_hz * t_s_sec);
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let comp = Normal::new(0.0, (0.5f64).sqrt()).expect("unit normal");
    let n = scenario.n_links() * scenario.n_tx();
    let h: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(comp.sample(&mut rng), comp.sample(&mut rng)))
        .collect();
    let mut state = ChannelState {
        h,
        g: vec![0.0; n],
        slot: 1,
        rho,
    };
    state.recompute_gains(scenario);
    Ok(state)
}
