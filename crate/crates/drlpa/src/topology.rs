//! Static network geometry.
//!
//! Cells are laid out as a hexagonal lattice wrapped on an `m x m` rhombic
//! torus (`n_cells = m^2`, `m >= 5`). The wrap gives every cell exactly two
//! full interference rings — 6 cells at lattice distance 1 and 12 at distance
//! 2 — so the interference neighborhood `D_n` has 18 members for every `n`,
//! with no edge effects.
//!
//! Each base station sits at its cell center and serves `K` access points
//! placed uniformly over the annulus `[r_min, r_max]` around it (uniform in
//! area by default; a uniform-in-radius variant is kept switchable).
//!
//! Large-scale fading between a transmitter and a receiver at distance `d` km
//! follows the LTE urban model
//!
//! ```text
//! beta_dB = -120.9 - 37.6 * log10(d) + X,    X ~ N(0, sigma^2)
//! ```
//!
//! with log-normal shadowing of standard deviation `sigma` dB, drawn
//! independently per (transmitter cell, receiver link) pair. Gains are stored
//! on a linear scale and only for the transmitters a receiver can actually
//! hear, i.e. its own cell plus `D_n`; the SINR and the localized reward never
//! read anything beyond that set.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::units::{db_to_linear, linear_to_db};

/// Reference path loss at 1 km, in dB.
const PATH_LOSS_1KM_DB: f64 = -120.9;
/// Path-loss slope per decade of distance, in dB.
const PATH_LOSS_SLOPE_DB: f64 = 37.6;

#[derive(Debug, Error, PartialEq)]
pub enum TopologyError {
    #[error("n_cells = {0} does not fit the torus lattice (need a perfect square >= 25)")]
    BadCellCount(usize),
    #[error("users_per_cell must be positive")]
    NoUsers,
    #[error("invalid radii: r_min = {r_min} km, r_max = {r_max} km (need 0 < r_min < r_max)")]
    BadRadii { r_min: f64, r_max: f64 },
    #[error("cell index {cell} out of range (n_cells = {n_cells})")]
    CellOutOfRange { cell: usize, n_cells: usize },
    #[error("inconsistent scenario parts: {0}")]
    BadParts(String),
    #[error("unsupported scenario document version {0}")]
    BadVersion(u32),
}

/// How AP distances from the serving BS are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlacementLaw {
    /// Uniform over the annulus area: radius = sqrt(r_min^2 + u (r_max^2 - r_min^2)).
    AnnulusArea,
    /// Uniform in radius: radius = r_min + u (r_max - r_min).
    UniformRadius,
}

/// Construction parameters for [`build_scenario`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioParams {
    pub n_cells: usize,
    pub users_per_cell: usize,
    pub r_min_km: f64,
    pub r_max_km: f64,
    pub shadow_sigma_db: f64,
    pub placement: PlacementLaw,
}

impl Default for ScenarioParams {
    fn default() -> Self {
        Self {
            n_cells: 25,
            users_per_cell: 4,
            r_min_km: 0.01,
            r_max_km: 1.0,
            shadow_sigma_db: 8.0,
            placement: PlacementLaw::AnnulusArea,
        }
    }
}

/// Static geometry: cell lattice, AP positions, interference neighborhoods
/// and large-scale gains. Immutable after construction, safe to share
/// read-only across evaluation workers.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkScenario {
    n_cells: usize,
    users_per_cell: usize,
    r_min_km: f64,
    r_max_km: f64,
    bs_positions: Vec<[f64; 2]>,
    /// Indexed by `cell * users_per_cell + user`.
    ap_positions: Vec<[f64; 2]>,
    /// `neighborhoods[n]` is `D_n`, ordered by ascending wrapped lattice
    /// distance, ties by cell index.
    neighborhoods: Vec<Vec<usize>>,
    /// Linear large-scale gain, indexed by `link_index(n, k) * n_tx + slot`
    /// where slot 0 is the serving cell and slot `j >= 1` is `D_n[j - 1]`.
    beta: Vec<f64>,
}

/// Returns the large-scale fading in dB at distance `d_km` for a given
/// shadowing draw (`shadow_db = 10 log10(z)`).
pub fn large_scale_db(d_km: f64, shadow_db: f64) -> f64 {
    PATH_LOSS_1KM_DB - PATH_LOSS_SLOPE_DB * d_km.log10() + shadow_db
}

/// Builds a scenario with default annulus-area placement.
///
/// `n_cells` must be a perfect square at least 25 so the torus wrap yields
/// two complete interference rings around every cell.
pub fn build_scenario(
    n_cells: usize,
    users_per_cell: usize,
    r_min_km: f64,
    r_max_km: f64,
    shadow_sigma_db: f64,
    rng_seed: u64,
) -> Result<NetworkScenario, TopologyError> {
    NetworkScenario::build(
        &ScenarioParams {
            n_cells,
            users_per_cell,
            r_min_km,
            r_max_km,
            shadow_sigma_db,
            placement: PlacementLaw::AnnulusArea,
        },
        rng_seed,
    )
}

/// Axial hex coordinate of cell `i` on the `m x m` rhombic torus.
fn axial(i: usize, m: usize) -> (i64, i64) {
    ((i % m) as i64, (i / m) as i64)
}

/// Hex graph distance for an axial displacement.
fn hex_norm(dq: i64, dr: i64) -> i64 {
    (dq.abs() + dr.abs() + (dq + dr).abs()) / 2
}

/// Minimum hex distance between two cells across all torus wrap copies.
fn wrapped_hex_distance(a: usize, b: usize, m: usize) -> i64 {
    let (qa, ra) = axial(a, m);
    let (qb, rb) = axial(b, m);
    let mi = m as i64;
    let mut best = i64::MAX;
    for wq in [-mi, 0, mi] {
        for wr in [-mi, 0, mi] {
            best = best.min(hex_norm(qb - qa + wq, rb - ra + wr));
        }
    }
    best
}

/// Euclidean center of a cell for lattice spacing `s` km between neighbors.
fn cell_center(i: usize, m: usize, s: f64) -> [f64; 2] {
    let (q, r) = axial(i, m);
    [
        s * (q as f64 + r as f64 / 2.0),
        s * (r as f64 * 3f64.sqrt() / 2.0),
    ]
}

/// Minimum euclidean distance from `from` to `to` over the 9 torus copies.
fn wrapped_euclidean(from: [f64; 2], to: [f64; 2], m: usize, s: f64) -> f64 {
    let span = m as f64 * s;
    // Torus translation basis in euclidean space.
    let tq = [span, 0.0];
    let tr = [span / 2.0, span * 3f64.sqrt() / 2.0];
    let mut best = f64::INFINITY;
    for wq in [-1.0, 0.0, 1.0] {
        for wr in [-1.0, 0.0, 1.0] {
            let dx = to[0] - from[0] - wq * tq[0] - wr * tr[0];
            let dy = to[1] - from[1] - wq * tq[1] - wr * tr[1];
            best = best.min((dx * dx + dy * dy).sqrt());
        }
    }
    best
}

impl NetworkScenario {
    /// Builds the lattice, places APs and draws large-scale gains.
    pub fn build(params: &ScenarioParams, rng_seed: u64) -> Result<Self, TopologyError> {
        let m = lattice_side(params.n_cells)?;
        if params.users_per_cell == 0 {
            return Err(TopologyError::NoUsers);
        }
        if !(params.r_min_km > 0.0 && params.r_min_km < params.r_max_km) {
            return Err(TopologyError::BadRadii {
                r_min: params.r_min_km,
                r_max: params.r_max_km,
            });
        }

        let n = params.n_cells;
        let k = params.users_per_cell;
        let spacing = 2.0 * params.r_max_km;
        let bs_positions: Vec<[f64; 2]> = (0..n).map(|i| cell_center(i, m, spacing)).collect();

        // D_n: cells at wrapped hex distance 1 or 2, nearest ring first.
        let mut neighborhoods = Vec::with_capacity(n);
        for a in 0..n {
            let mut cells: Vec<(i64, usize)> = (0..n)
                .filter(|&b| b != a)
                .map(|b| (wrapped_hex_distance(a, b, m), b))
                .filter(|&(d, _)| d <= 2)
                .collect();
            cells.sort();
            neighborhoods.push(cells.into_iter().map(|(_, b)| b).collect::<Vec<_>>());
        }

        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);

        let mut ap_positions = Vec::with_capacity(n * k);
        for cell in 0..n {
            for _ in 0..k {
                let u: f64 = rng.random();
                let radius = match params.placement {
                    PlacementLaw::AnnulusArea => {
                        let r2 = params.r_min_km * params.r_min_km;
                        (r2 + u * (params.r_max_km * params.r_max_km - r2)).sqrt()
                    }
                    PlacementLaw::UniformRadius => {
                        params.r_min_km + u * (params.r_max_km - params.r_min_km)
                    }
                };
                let angle: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                let c = bs_positions[cell];
                ap_positions.push([c[0] + radius * angle.cos(), c[1] + radius * angle.sin()]);
            }
        }

        let mut scenario = Self {
            n_cells: n,
            users_per_cell: k,
            r_min_km: params.r_min_km,
            r_max_km: params.r_max_km,
            bs_positions,
            ap_positions,
            neighborhoods,
            beta: Vec::new(),
        };
        scenario.beta = scenario.draw_beta(params.shadow_sigma_db, &mut rng);
        Ok(scenario)
    }

    /// Re-draws the shadowing on fixed geometry, e.g. once per episode when
    /// AP placement is held constant across episodes.
    pub fn with_fresh_shadowing(&self, shadow_sigma_db: f64, rng_seed: u64) -> Self {
        let mut out = self.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        out.beta = out.draw_beta(shadow_sigma_db, &mut rng);
        out
    }

    fn draw_beta(&self, shadow_sigma_db: f64, rng: &mut impl Rng) -> Vec<f64> {
        let m = (self.n_cells as f64).sqrt().round() as usize;
        let spacing = 2.0 * self.r_max_km;
        let shadow = Normal::new(0.0, shadow_sigma_db.max(0.0)).expect("valid sigma");
        let n_tx = self.n_tx();
        let mut beta = Vec::with_capacity(self.n_cells * self.users_per_cell * n_tx);
        for cell in 0..self.n_cells {
            for user in 0..self.users_per_cell {
                let ap = self.ap_positions[cell * self.users_per_cell + user];
                for slot in 0..n_tx {
                    let tx = self.tx_cell(cell, slot);
                    let d = wrapped_euclidean(self.bs_positions[tx], ap, m, spacing);
                    let shadow_db = if shadow_sigma_db > 0.0 {
                        shadow.sample(rng)
                    } else {
                        0.0
                    };
                    beta.push(db_to_linear(large_scale_db(d, shadow_db)));
                }
            }
        }
        beta
    }

    /// Assembles a scenario from explicit parts. Intended for toy geometries
    /// and for deserialization; validates the shape invariants.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        n_cells: usize,
        users_per_cell: usize,
        r_min_km: f64,
        r_max_km: f64,
        bs_positions: Vec<[f64; 2]>,
        ap_positions: Vec<[f64; 2]>,
        neighborhoods: Vec<Vec<usize>>,
        beta: Vec<f64>,
    ) -> Result<Self, TopologyError> {
        if n_cells == 0 || users_per_cell == 0 {
            return Err(TopologyError::BadParts("empty network".into()));
        }
        if bs_positions.len() != n_cells {
            return Err(TopologyError::BadParts("bs_positions length".into()));
        }
        if ap_positions.len() != n_cells * users_per_cell {
            return Err(TopologyError::BadParts("ap_positions length".into()));
        }
        if neighborhoods.len() != n_cells {
            return Err(TopologyError::BadParts("neighborhoods length".into()));
        }
        let d_len = neighborhoods[0].len();
        for (n, d) in neighborhoods.iter().enumerate() {
            if d.len() != d_len {
                return Err(TopologyError::BadParts(
                    "neighborhood sizes must be identical".into(),
                ));
            }
            if d.iter().any(|&c| c >= n_cells) {
                return Err(TopologyError::BadParts("neighbor index out of range".into()));
            }
            if d.contains(&n) {
                return Err(TopologyError::BadParts("cell cannot neighbor itself".into()));
            }
        }
        if beta.len() != n_cells * users_per_cell * (1 + d_len) {
            return Err(TopologyError::BadParts("beta length".into()));
        }
        if beta.iter().any(|&b| !(b > 0.0 && b.is_finite())) {
            return Err(TopologyError::BadParts(
                "beta must be strictly positive and finite".into(),
            ));
        }
        Ok(Self {
            n_cells,
            users_per_cell,
            r_min_km,
            r_max_km,
            bs_positions,
            ap_positions,
            neighborhoods,
            beta,
        })
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn users_per_cell(&self) -> usize {
        self.users_per_cell
    }

    /// Total number of downlinks `N * K`.
    pub fn n_links(&self) -> usize {
        self.n_cells * self.users_per_cell
    }

    /// Flat index of downlink `(cell, user)`.
    pub fn link_index(&self, cell: usize, user: usize) -> usize {
        debug_assert!(cell < self.n_cells && user < self.users_per_cell);
        cell * self.users_per_cell + user
    }

    /// Number of transmitters a receiver can hear: itself plus `|D_n|`.
    pub fn n_tx(&self) -> usize {
        1 + self.neighborhoods[0].len()
    }

    /// The transmitter cell behind gain slot `slot` of receiver cell `rx`.
    pub fn tx_cell(&self, rx: usize, slot: usize) -> usize {
        if slot == 0 {
            rx
        } else {
            self.neighborhoods[rx][slot - 1]
        }
    }

    /// The interference neighborhood `D_cell`, ordered by ascending wrapped
    /// lattice distance with ties broken by index.
    pub fn neighborhood(&self, cell: usize) -> Result<&[usize], TopologyError> {
        self.neighborhoods
            .get(cell)
            .map(|v| v.as_slice())
            .ok_or(TopologyError::CellOutOfRange {
                cell,
                n_cells: self.n_cells,
            })
    }

    /// Large-scale gain of slot `slot` toward receiver `(cell, user)`.
    pub fn beta_at(&self, cell: usize, user: usize, slot: usize) -> f64 {
        self.beta[self.link_index(cell, user) * self.n_tx() + slot]
    }

    /// Large-scale gain from `tx_cell` to receiver `(rx_cell, user)`, if the
    /// transmitter is within the receiver's neighborhood.
    pub fn beta(&self, tx_cell: usize, rx_cell: usize, user: usize) -> Option<f64> {
        self.slot_of(rx_cell, tx_cell)
            .map(|slot| self.beta_at(rx_cell, user, slot))
    }

    /// Gain-slot of transmitter `tx` at receiver cell `rx`, if stored.
    pub fn slot_of(&self, rx: usize, tx: usize) -> Option<usize> {
        if tx == rx {
            return Some(0);
        }
        self.neighborhoods[rx]
            .iter()
            .position(|&c| c == tx)
            .map(|p| p + 1)
    }

    pub fn bs_position(&self, cell: usize) -> [f64; 2] {
        self.bs_positions[cell]
    }

    pub fn ap_position(&self, cell: usize, user: usize) -> [f64; 2] {
        self.ap_positions[self.link_index(cell, user)]
    }

    /// Distance from an AP to its serving BS, km.
    pub fn serving_distance(&self, cell: usize, user: usize) -> f64 {
        let bs = self.bs_positions[cell];
        let ap = self.ap_position(cell, user);
        ((ap[0] - bs[0]).powi(2) + (ap[1] - bs[1]).powi(2)).sqrt()
    }

    pub fn r_min_km(&self) -> f64 {
        self.r_min_km
    }

    pub fn r_max_km(&self) -> f64 {
        self.r_max_km
    }

    /// Serializable snapshot with gains in dB.
    pub fn to_document(&self) -> ScenarioDocument {
        ScenarioDocument {
            version: SCENARIO_DOC_VERSION,
            n_cells: self.n_cells,
            users_per_cell: self.users_per_cell,
            r_min_km: self.r_min_km,
            r_max_km: self.r_max_km,
            bs_positions: self.bs_positions.clone(),
            ap_positions: self.ap_positions.clone(),
            neighborhoods: self.neighborhoods.clone(),
            beta_db: self.beta.iter().map(|&b| linear_to_db(b)).collect(),
        }
    }

    pub fn from_document(doc: &ScenarioDocument) -> Result<Self, TopologyError> {
        if doc.version != SCENARIO_DOC_VERSION {
            return Err(TopologyError::BadVersion(doc.version));
        }
        Self::from_parts(
            doc.n_cells,
            doc.users_per_cell,
            doc.r_min_km,
            doc.r_max_km,
            doc.bs_positions.clone(),
            doc.ap_positions.clone(),
            doc.neighborhoods.clone(),
            doc.beta_db.iter().map(|&db| db_to_linear(db)).collect(),
        )
    }
}

const SCENARIO_DOC_VERSION: u32 = 1;

/// Versioned JSON form of a scenario, for reproducibility fixtures.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioDocument {
    pub version: u32,
    pub n_cells: usize,
    pub users_per_cell: usize,
    pub r_min_km: f64,
    pub r_max_km: f64,
    pub bs_positions: Vec<[f64; 2]>,
    pub ap_positions: Vec<[f64; 2]>,
    pub neighborhoods: Vec<Vec<usize>>,
    pub beta_db: Vec<f64>,
}

fn lattice_side(n_cells: usize) -> Result<usize, TopologyError> {
    let m = (n_cells as f64).sqrt().round() as usize;
    if m * m != n_cells || m < 5 {
        return Err(TopologyError::BadCellCount(n_cells));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_scenario(seed: u64) -> NetworkScenario {
        build_scenario(25, 4, 0.01, 1.0, 8.0, seed).unwrap()
    }

    #[test]
    fn neighborhoods_have_18_members() {
        let sc = default_scenario(1);
        for n in 0..25 {
            let d = sc.neighborhood(n).unwrap();
            assert_eq!(d.len(), 18, "cell {n}");
            assert!(!d.contains(&n));
        }
    }

    #[test]
    fn neighborhood_matches_ring_enumeration() {
        // Independent oracle: gather the two hex rings by brute force over
        // all 9 torus copies of every cell, then compare as sets.
        let sc = default_scenario(2);
        let m = 5usize;
        for a in 0..25 {
            let mut expect: Vec<usize> = (0..25)
                .filter(|&b| b != a && wrapped_hex_distance(a, b, m) <= 2)
                .collect();
            expect.sort();
            let mut got: Vec<usize> = sc.neighborhood(a).unwrap().to_vec();
            got.sort();
            assert_eq!(got, expect);
            let distinct: std::collections::HashSet<_> = got.iter().collect();
            assert_eq!(distinct.len(), 18);
        }
    }

    #[test]
    fn neighborhood_ordering_is_ring_then_index() {
        let sc = default_scenario(3);
        let d = sc.neighborhood(7).unwrap();
        let ring: Vec<i64> = d
            .iter()
            .map(|&b| wrapped_hex_distance(7, b, 5))
            .collect();
        assert!(ring.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(ring.iter().filter(|&&r| r == 1).count(), 6);
        assert_eq!(ring.iter().filter(|&&r| r == 2).count(), 12);
        for w in d.windows(2) {
            let (r0, r1) = (
                wrapped_hex_distance(7, w[0], 5),
                wrapped_hex_distance(7, w[1], 5),
            );
            if r0 == r1 {
                assert!(w[0] < w[1]);
            }
        }
    }

    #[test]
    fn neighborhood_symmetry() {
        let sc = default_scenario(4);
        for n in 0..25 {
            for &m_ in sc.neighborhood(n).unwrap() {
                assert!(sc.neighborhood(m_).unwrap().contains(&n));
            }
        }
    }

    #[test]
    fn aps_lie_in_annulus() {
        let sc = build_scenario(25, 1, 0.01, 1.0, 0.0, 5).unwrap();
        assert_eq!(sc.n_links(), 25);
        for cell in 0..25 {
            let d = sc.serving_distance(cell, 0);
            assert!((0.01..=1.0).contains(&d), "d = {d}");
        }
    }

    #[test]
    fn path_loss_reference_point() {
        // d = 1 km and a unit shadowing draw leave only the intercept.
        assert!((large_scale_db(1.0, 0.0) - (-120.9)).abs() < 1e-12);
        let sc = default_scenario(6);
        assert!(sc.beta_at(3, 1, 0) > 0.0);
    }

    #[test]
    fn placement_law_matches_annulus_cdf() {
        // Kolmogorov-Smirnov against F(d) = (d^2 - r_min^2)/(r_max^2 - r_min^2).
        let mut distances = Vec::new();
        let (r_min, r_max) = (0.01f64, 1.0f64);
        for seed in 0..100u64 {
            let sc = build_scenario(25, 4, r_min, r_max, 0.0, 1000 + seed).unwrap();
            for cell in 0..25 {
                for user in 0..4 {
                    distances.push(sc.serving_distance(cell, user));
                }
            }
        }
        assert_eq!(distances.len(), 10_000);
        distances.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = distances.len() as f64;
        let mut ks: f64 = 0.0;
        for (i, d) in distances.iter().enumerate() {
            let cdf = (d * d - r_min * r_min) / (r_max * r_max - r_min * r_min);
            let lo = i as f64 / n;
            let hi = (i + 1) as f64 / n;
            ks = ks.max((cdf - lo).abs()).max((hi - cdf).abs());
        }
        assert!(ks < 0.02, "KS statistic {ks}");
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let a = default_scenario(42);
        let b = default_scenario(42);
        assert_eq!(a, b);
        let ja = serde_json::to_string(&a.to_document()).unwrap();
        let jb = serde_json::to_string(&b.to_document()).unwrap();
        assert_eq!(ja, jb);
    }

    #[test]
    fn document_round_trip() {
        let sc = default_scenario(9);
        let doc = sc.to_document();
        let text = serde_json::to_string(&doc).unwrap();
        let back = NetworkScenario::from_document(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.n_cells(), sc.n_cells());
        for n in 0..sc.n_cells() {
            assert_eq!(sc.neighborhood(n).unwrap(), back.neighborhood(n).unwrap());
        }
        for l in 0..sc.n_links() {
            for s in 0..sc.n_tx() {
                let (c, u) = (l / 4, l % 4);
                let (a, b) = (sc.beta_at(c, u, s), back.beta_at(c, u, s));
                assert!((a - b).abs() / a < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(
            build_scenario(24, 4, 0.01, 1.0, 8.0, 0).unwrap_err(),
            TopologyError::BadCellCount(24)
        );
        assert_eq!(
            build_scenario(16, 4, 0.01, 1.0, 8.0, 0).unwrap_err(),
            TopologyError::BadCellCount(16)
        );
        assert!(matches!(
            build_scenario(25, 4, 0.0, 1.0, 8.0, 0).unwrap_err(),
            TopologyError::BadRadii { .. }
        ));
        assert!(matches!(
            build_scenario(25, 4, 1.0, 0.5, 8.0, 0).unwrap_err(),
            TopologyError::BadRadii { .. }
        ));
        let sc = default_scenario(1);
        assert!(matches!(
            sc.neighborhood(25),
            Err(TopologyError::CellOutOfRange { .. })
        ));
    }

    #[test]
    fn fresh_shadowing_keeps_geometry() {
        let sc = default_scenario(11);
        let re = sc.with_fresh_shadowing(8.0, 99);
        assert_eq!(sc.ap_position(3, 2), re.ap_position(3, 2));
        assert_eq!(sc.neighborhood(3).unwrap(), re.neighborhood(3).unwrap());
        assert_ne!(sc.beta_at(3, 2, 0), re.beta_at(3, 2, 0));
    }
}
