//! Benchmark allocators.
//!
//! Two trivial schemes bound the comparison from below: transmit at full
//! power everywhere, or draw every link's power uniformly from `[0, P_max]`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::metrics::PowerAllocation;
use crate::topology::NetworkScenario;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaselineKind {
    MaxPower,
    RandomPower,
}

/// One allocation under the given scheme.
pub fn allocate(
    kind: BaselineKind,
    scenario: &NetworkScenario,
    p_max_mw: f64,
    rng: &mut impl Rng,
) -> PowerAllocation {
    match kind {
        BaselineKind::MaxPower => PowerAllocation::uniform(scenario, p_max_mw),
        BaselineKind::RandomPower => {
            let p: Vec<f64> = (0..scenario.n_links())
                .map(|_| rng.random_range(0.0..=p_max_mw))
                .collect();
            PowerAllocation::from_vec(scenario, p).expect("matching shape")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::build_scenario;
    use crate::units::dbm_to_mw;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn max_power_saturates_every_link() {
        let sc = build_scenario(25, 4, 0.01, 1.0, 8.0, 1).unwrap();
        let p_max = dbm_to_mw(38.0);
        let alloc = allocate(
            BaselineKind::MaxPower,
            &sc,
            p_max,
            &mut ChaCha8Rng::seed_from_u64(0),
        );
        for cell in 0..25 {
            for user in 0..4 {
                assert!((alloc.power(cell, user) - 6309.573).abs() < 1e-2);
            }
        }
        alloc.validate(p_max).unwrap();
    }

    #[test]
    fn random_power_is_uniform_in_the_box() {
        let sc = build_scenario(25, 4, 0.01, 1.0, 8.0, 2).unwrap();
        let p_max = 1000.0;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut sum = 0.0;
        let mut count = 0usize;
        for _ in 0..1000 {
            let alloc = allocate(BaselineKind::RandomPower, &sc, p_max, &mut rng);
            alloc.validate(p_max).unwrap();
            sum += alloc.as_slice().iter().sum::<f64>();
            count += alloc.as_slice().len();
        }
        assert!(count >= 100_000);
        let mean = sum / count as f64;
        assert!((mean - p_max / 2.0).abs() < 0.01 * p_max, "mean {mean}");
    }

    #[test]
    fn random_power_is_seed_deterministic() {
        let sc = build_scenario(25, 1, 0.01, 1.0, 8.0, 4).unwrap();
        let a = allocate(
            BaselineKind::RandomPower,
            &sc,
            100.0,
            &mut ChaCha8Rng::seed_from_u64(7),
        );
        let b = allocate(
            BaselineKind::RandomPower,
            &sc,
            100.0,
            &mut ChaCha8Rng::seed_from_u64(7),
        );
        assert_eq!(a, b);
    }
}
