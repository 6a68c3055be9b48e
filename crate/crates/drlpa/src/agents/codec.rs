//! Action-to-power codecs.
//!
//! Discrete learners pick one of `|A|` power levels: an explicit zero plus a
//! geometric ladder from `P_min` to `P_max`,
//!
//! ```text
//! A = {0} ∪ { P_min (P_max / P_min)^(i / (|A| - 2)) | i = 0 .. |A| - 2 }
//! ```
//!
//! so consecutive non-zero levels are equally spaced in dB. The continuous
//! learner emits a pre-activation that a scaled sigmoid squashes into
//! `(0, P_max)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CodecError {
    #[error("need at least 3 levels for the geometric ladder, got {0}")]
    TooFewLevels(usize),
    #[error("power bounds must satisfy 0 < p_min < p_max, got ({p_min}, {p_max})")]
    BadBounds { p_min: f64, p_max: f64 },
    #[error("action index {index} out of range (|A| = {n_levels})")]
    IndexOutOfRange { index: usize, n_levels: usize },
}

/// Maps between network outputs and transmit powers in milliwatts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ActionCodec {
    Discrete { levels: Vec<f64> },
    Continuous { p_max_mw: f64 },
}

impl ActionCodec {
    /// The `|A|`-level ladder: index 0 is silence, indices `1..|A|` run
    /// geometrically from `p_min` to `p_max` inclusive.
    pub fn discrete(n_levels: usize, p_min_mw: f64, p_max_mw: f64) -> Result<Self, CodecError> {
        if n_levels < 3 {
            return Err(CodecError::TooFewLevels(n_levels));
        }
        if !(p_min_mw > 0.0 && p_min_mw < p_max_mw) {
            return Err(CodecError::BadBounds {
                p_min: p_min_mw,
                p_max: p_max_mw,
            });
        }
        let steps = n_levels - 2;
        let ratio = p_max_mw / p_min_mw;
        let mut levels = Vec::with_capacity(n_levels);
        levels.push(0.0);
        for i in 0..=steps {
            levels.push(p_min_mw * ratio.powf(i as f64 / steps as f64));
        }
        Ok(ActionCodec::Discrete { levels })
    }

    pub fn continuous(p_max_mw: f64) -> Self {
        ActionCodec::Continuous { p_max_mw }
    }

    pub fn n_levels(&self) -> usize {
        match self {
            ActionCodec::Discrete { levels } => levels.len(),
            ActionCodec::Continuous { .. } => 0,
        }
    }

    /// Power of a discrete action index.
    pub fn power_of_index(&self, index: usize) -> Result<f64, CodecError> {
        match self {
            ActionCodec::Discrete { levels } => {
                levels.get(index).copied().ok_or(CodecError::IndexOutOfRange {
                    index,
                    n_levels: levels.len(),
                })
            }
            ActionCodec::Continuous { .. } => Err(CodecError::IndexOutOfRange {
                index,
                n_levels: 0,
            }),
        }
    }

    /// Nearest-level encoding of an arbitrary power.
    pub fn index_of_power(&self, power_mw: f64) -> Result<usize, CodecError> {
        match self {
            ActionCodec::Discrete { levels } => Ok(levels
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| {
                    (*a - power_mw)
                        .abs()
                        .partial_cmp(&(*b - power_mw).abs())
                        .expect("finite levels")
                })
                .map(|(i, _)| i)
                .expect("non-empty ladder")),
            ActionCodec::Continuous { .. } => Err(CodecError::IndexOutOfRange {
                index: 0,
                n_levels: 0,
            }),
        }
    }

    /// Squashes a pre-activation into `(0, P_max)`.
    pub fn decode_continuous(&self, pre_activation: f64) -> f64 {
        let p_max = match self {
            ActionCodec::Continuous { p_max_mw } => *p_max_mw,
            ActionCodec::Discrete { levels } => *levels.last().expect("non-empty ladder"),
        };
        p_max / (1.0 + (-pre_activation).exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::{dbm_to_mw, mw_to_dbm};

    fn paper_codec() -> ActionCodec {
        // P_min = 5 dBm, P_max = 38 dBm, |A| = 10.
        ActionCodec::discrete(10, dbm_to_mw(5.0), dbm_to_mw(38.0)).unwrap()
    }

    #[test]
    fn ladder_endpoints_and_zero() {
        let codec = paper_codec();
        assert_eq!(codec.n_levels(), 10);
        assert_eq!(codec.power_of_index(0).unwrap(), 0.0);
        assert!((codec.power_of_index(1).unwrap() - 3.1623).abs() < 1e-3);
        assert!((codec.power_of_index(9).unwrap() - 6309.573).abs() < 1e-2);
    }

    #[test]
    fn ladder_spacing_is_uniform_in_db() {
        // 33 dB from 5 to 38 dBm over 8 steps: 4.125 dB between levels.
        let codec = paper_codec();
        for i in 1..9 {
            let lo = mw_to_dbm(codec.power_of_index(i).unwrap());
            let hi = mw_to_dbm(codec.power_of_index(i + 1).unwrap());
            assert!((hi - lo - 33.0 / 8.0).abs() < 1e-9, "step {i}");
        }
    }

    #[test]
    fn round_trip_all_levels() {
        let codec = paper_codec();
        for i in 0..codec.n_levels() {
            let p = codec.power_of_index(i).unwrap();
            assert_eq!(codec.index_of_power(p).unwrap(), i);
        }
    }

    #[test]
    fn continuous_range_is_open_interval() {
        let codec = ActionCodec::continuous(6309.6);
        for x in [-30.0, -1.0, 0.0, 1.0, 30.0] {
            let p = codec.decode_continuous(x);
            assert!(p > 0.0 && p < 6309.6, "x = {x}, p = {p}");
        }
        assert!((codec.decode_continuous(0.0) - 3154.8).abs() < 0.1);
    }

    #[test]
    fn rejects_bad_configs() {
        assert_eq!(
            ActionCodec::discrete(2, 1.0, 10.0).unwrap_err(),
            CodecError::TooFewLevels(2)
        );
        assert!(matches!(
            ActionCodec::discrete(10, 0.0, 10.0).unwrap_err(),
            CodecError::BadBounds { .. }
        ));
        let codec = paper_codec();
        assert!(matches!(
            codec.power_of_index(10),
            Err(CodecError::IndexOutOfRange { .. })
        ));
    }
}
