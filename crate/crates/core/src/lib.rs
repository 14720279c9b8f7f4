//! Spectral analysis and time-domain simulation of the correlated random
//! walk (Goldstein-Kac) system
//!
//! ```text
//! u_t + S u_x = -u + v,   v_t - S v_x = u - v,   x in (-1/2, 1/2),
//! u(-1/2, t) = v(1/2, t) = 0.
//! ```
//!
//! * [`spectrum`] solves the characteristic equations `sin(nu) = +/- S nu`
//!   and maps their roots to eigenvalues, including the dominant one that
//!   sets the optimal decay rate.
//! * [`eigenfunctions`] evaluates the closed-form eigenfunctions and checks
//!   their geometry.
//! * [`oracle`] recomputes eigenvalues by shooting on the eigenvalue ODE and
//!   counts them with the argument principle.
//! * [`simulator`] integrates the PDE exactly along characteristics and fits
//!   decay rates and asymptotic profiles.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod eigenfunctions;
pub mod error;
pub mod oracle;
pub mod params;
pub mod roots;
pub mod simulator;
pub mod spectrum;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use params::{Dimensional, ModelParams, Parity};
pub use spectrum::{CriticalS, EigenPair, Nu, NuRoot};

/// 40 log-spaced speeds in `[0.01, 5]`, spanning every spectral regime.
pub fn s_grid() -> Vec<f64> {
    log_space(0.01, 5.0, 40)
}

pub fn log_space(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2 && lo > 0.0 && hi > lo);
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|k| (a + (b - a) * k as f64 / (count - 1) as f64).exp())
        .collect()
}
