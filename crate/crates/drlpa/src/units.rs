//! Decibel conversions.
//!
//! Everything internal runs on linear scales (milliwatts for powers, plain
//! ratios for gains); decibels appear only at feature and reporting
//! boundaries, so the conversions live in one place.

/// Converts a ratio or gain in dB to linear scale.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Converts a linear ratio or gain to dB. Zero maps to `-inf`.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Converts a power in dBm to milliwatts.
pub fn dbm_to_mw(dbm: f64) -> f64 {
    db_to_linear(dbm)
}

/// Converts a power in milliwatts to dBm.
pub fn mw_to_dbm(mw: f64) -> f64 {
    linear_to_db(mw)
}
