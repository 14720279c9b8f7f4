use thiserror::Error;

/// Failures reported by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Root solve ended with a residual above tolerance. This points at a
    /// bracketing or tolerance bug, never at a missing root.
    #[error("root for n={n}, j={j} did not converge (residual {residual:e})")]
    ConvergenceFailure { n: usize, j: u8, residual: f64 },

    #[error("eigenfunction grid too coarse to resolve the argument after {refinements} refinements")]
    GridTooCoarse { refinements: usize },

    #[error("shooting refinement did not converge after {iterations} iterations (last |F| = {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("an eigenvalue lies too close to the contour (argument jump {jump:.3} rad)")]
    BoundaryTooClose { jump: f64 },

    #[error("time step {dt:e} violates unit CFL (expected {expected:e})")]
    CflViolation { dt: f64, expected: f64 },

    #[error("degenerate fit window: {0}")]
    DegenerateWindow(String),

    #[error("state has zero norm")]
    ZeroState,
}

pub type Result<T> = std::result::Result<T, Error>;
