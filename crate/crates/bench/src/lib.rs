//! Shared fixtures for the criterion benchmarks.

use crw_core::ModelParams;

/// Below the first critical speed, just above it, the unit-decay speed and
/// the fast regime.
pub const SPEEDS: [f64; 4] = [0.1, 0.8, std::f64::consts::FRAC_2_PI, 2.0];

pub fn params(s: f64) -> ModelParams {
    ModelParams::new(s).expect("benchmark speeds are positive")
}
