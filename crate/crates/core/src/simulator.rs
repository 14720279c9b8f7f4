//! Time-domain solver for
//!
//! ```text
//! u_t + S u_x = -u + v,   v_t - S v_x = u - v,   u(-1/2, t) = v(1/2, t) = 0.
//! ```
//!
//! The step is a Strang splitting `R(dt/2) T(dt) R(dt/2)`. At unit CFL
//! (`dt = dx / S`) the transport `T` is an exact one-cell shift along the
//! characteristics, and the reaction `R` is solved in closed form: `u + v` is
//! conserved and `u - v` decays like `exp(-2t)`. The only error left is the
//! splitting commutator, so no numerical diffusion biases the decay rates.
//!
//! The outflow nodes `v[0]` and `u[N]` are closed separately by integrating
//! their characteristic across the last cell, since the splitting would
//! otherwise leave them with a non-smooth O(dt^2) error.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eigenfunctions::{evaluate, uniform_grid};
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::spectrum::dominant;

pub const DEFAULT_INTERVALS: usize = 2000;
/// Fits are rejected below this norm.
pub const UNDERFLOW_FLOOR: f64 = 1e-300;
pub const MIN_FIT_SAMPLES: usize = 100;
const CFL_TOL: f64 = 1e-12;

/// Fields on the uniform grid `x_i = -1/2 + i/N`, `i = 0..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub t: f64,
}

impl State {
    pub fn zeros(intervals: usize) -> Self {
        assert!(intervals >= 2);
        Self {
            u: vec![0.0; intervals + 1],
            v: vec![0.0; intervals + 1],
            t: 0.0,
        }
    }

    /// Sample `(u, v)` at the grid nodes and impose the inflow conditions.
    pub fn from_fn(intervals: usize, mut f: impl FnMut(f64) -> (f64, f64)) -> Self {
        let mut state = Self::zeros(intervals);
        for (i, x) in uniform_grid(intervals).into_iter().enumerate() {
            let (u, v) = f(x);
            state.u[i] = u;
            state.v[i] = v;
        }
        state.enforce_boundary();
        state
    }

    #[inline]
    pub fn intervals(&self) -> usize {
        self.u.len() - 1
    }

    #[inline]
    pub fn dx(&self) -> f64 {
        1.0 / self.intervals() as f64
    }

    pub fn grid(&self) -> Vec<f64> {
        uniform_grid(self.intervals())
    }

    fn enforce_boundary(&mut self) {
        let last = self.intervals();
        self.u[0] = 0.0;
        self.v[last] = 0.0;
    }

    /// Trapezoidal discrete L2 norm of `(u, v)`.
    pub fn l2_norm(&self) -> f64 {
        trapezoid_inner(&self.u, &self.v, &self.u, &self.v, self.dx()).sqrt()
    }
}

fn trapezoid_inner(u1: &[f64], v1: &[f64], u2: &[f64], v2: &[f64], dx: f64) -> f64 {
    let last = u1.len() - 1;
    let mut sum = 0.0;
    for i in 0..=last {
        let w = if i == 0 || i == last { 0.5 } else { 1.0 };
        sum += w * (u1[i] * u2[i] + v1[i] * v2[i]);
    }
    sum * dx
}

/// Built-in initial conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialData {
    /// Unit-L2 dominant eigenfunction.
    Eigen,
    /// Indicator of `|x| < 1/4` in both components.
    Box,
    /// Tent `1 - 2|x|` in both components.
    Hat,
    /// Smooth positive bumps damped by `cos(pi x)`, drawn from a seeded ChaCha8 stream.
    Random { seed: u64 },
    /// `1` on `x < 0`, `0` on `x > 0`: a jump at the midpoint and an
    /// incompatibility with the inflow condition at `x = -1/2`.
    Step,
}

impl InitialData {
    pub fn build(&self, params: &ModelParams, intervals: usize) -> State {
        match *self {
            InitialData::Eigen => {
                let f = evaluate(&dominant(params), &uniform_grid(intervals)).normalized();
                State::from_fn(intervals, {
                    let mut i = 0;
                    move |_| {
                        let out = (f.u[i].re, f.v[i].re);
                        i += 1;
                        out
                    }
                })
            }
            InitialData::Box => State::from_fn(intervals, |x| {
                let w = jump_sample(0.25 - x.abs());
                (w, w)
            }),
            InitialData::Hat => State::from_fn(intervals, |x| {
                let w = 1.0 - 2.0 * x.abs();
                (w, w)
            }),
            InitialData::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut bumps = || -> Vec<(f64, f64, f64)> {
                    (0..3)
                        .map(|_| {
                            (
                                rng.gen_range(0.5..1.5),
                                rng.gen_range(-0.4..0.4),
                                rng.gen_range(0.05..0.2),
                            )
                        })
                        .collect()
                };
                let (bu, bv) = (bumps(), bumps());
                let eval = |bumps: &[(f64, f64, f64)], x: f64| -> f64 {
                    let sum: f64 = bumps
                        .iter()
                        .map(|&(a, c, w)| a * (-(x - c) * (x - c) / (2.0 * w * w)).exp())
                        .sum();
                    sum * (std::f64::consts::PI * x).cos()
                };
                State::from_fn(intervals, |x| (eval(&bu, x), eval(&bv, x)))
            }
            InitialData::Step => State::from_fn(intervals, |x| {
                let w = jump_sample(-x);
                (w, w)
            }),
        }
    }
}

/// Indicator of `d > 0`, taking the mean `1/2` on the jump itself. At unit CFL
/// the nodes with even and odd `i + k` never interact, so one-sided sampling of
/// a grid-aligned jump would weight the two sublattices differently and leave
/// an O(dx) checkerboard decaying at the dominant rate.
fn jump_sample(d: f64) -> f64 {
    const ON_JUMP: f64 = 1e-12;
    if d.abs() <= ON_JUMP {
        0.5
    } else if d > 0.0 {
        1.0
    } else {
        0.0
    }
}

/// Which parts of the splitting to apply. The partial modes exist to check
/// each sub-flow in isolation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Physics {
    Full,
    TransportOnly,
    ReactionOnly,
}

/// The unit-CFL time step `dx / S`.
pub fn unit_cfl_dt(params: &ModelParams, intervals: usize) -> f64 {
    1.0 / (intervals as f64 * params.s())
}

fn check_cfl(state: &State, params: &ModelParams, dt: f64) -> Result<()> {
    let expected = unit_cfl_dt(params, state.intervals());
    if (dt - expected).abs() > CFL_TOL * expected {
        return Err(Error::CflViolation { dt, expected });
    }
    Ok(())
}

/// Exact reaction flow over `tau`.
fn react(state: &mut State, tau: f64) {
    let decay = (-2.0 * tau).exp();
    for (u, v) in state.u.iter_mut().zip(state.v.iter_mut()) {
        let p = *u + *v;
        let q = (*u - *v) * decay;
        *u = 0.5 * (p + q);
        *v = 0.5 * (p - q);
    }
}

/// Exact transport by one cell with zero inflow.
fn transport(state: &mut State) {
    let last = state.intervals();
    state.u.copy_within(0..last, 1);
    state.u[0] = 0.0;
    state.v.copy_within(1..=last, 0);
    state.v[last] = 0.0;
}

/// Advance in place by one unit-CFL step.
pub fn advance(state: &mut State, params: &ModelParams, dt: f64, physics: Physics) -> Result<()> {
    check_cfl(state, params, dt)?;
    match physics {
        Physics::Full => {
            let last = state.intervals();
            let (u_left, v_left) = (state.u[1], state.v[1]);
            let (u_right, v_right) = (state.u[last - 1], state.v[last - 1]);
            react(state, 0.5 * dt);
            transport(state);
            react(state, 0.5 * dt);
            state.enforce_boundary();
            // Outflow nodes: integrate along the last cell of the characteristic,
            // where the other component falls linearly to its inflow value 0.
            let decay = (-dt).exp();
            state.v[0] = decay * (v_left + 0.5 * dt * u_left);
            state.u[last] = decay * (u_right + 0.5 * dt * v_right);
        }
        Physics::TransportOnly => transport(state),
        Physics::ReactionOnly => react(state, dt),
    }
    state.t += dt;
    Ok(())
}

pub fn step(state: &State, params: &ModelParams, dt: f64) -> Result<State> {
    step_with(state, params, dt, Physics::Full)
}

pub fn step_with(state: &State, params: &ModelParams, dt: f64, physics: Physics) -> Result<State> {
    let mut next = state.clone();
    advance(&mut next, params, dt, physics)?;
    Ok(next)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormSample {
    pub t: f64,
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Simulation {
    /// Norm after every step, starting with the initial state.
    pub history: Vec<NormSample>,
    /// States at the requested times, each taken at the nearest step.
    pub snapshots: Vec<State>,
}

/// Number of unit-CFL steps covering `t_end`.
pub fn steps_to(t_end: f64, dt: f64) -> usize {
    (t_end / dt - 1e-9).ceil().max(0.0) as usize
}

/// Step from `initial` to `t_end`, recording the norm at every step and
/// snapshots at `snapshot_times`.
pub fn simulate(initial: &State, params: &ModelParams, t_end: f64, snapshot_times: &[f64]) -> Result<Simulation> {
    if !(t_end > 0.0) {
        return Err(Error::InvalidParameter(format!("t_end must be positive, got {t_end}")));
    }
    let dt = unit_cfl_dt(params, initial.intervals());
    let n_steps = steps_to(t_end, dt);
    let mut wanted: Vec<(usize, usize)> = snapshot_times
        .iter()
        .enumerate()
        .map(|(k, &t)| (((t - initial.t) / dt).round().max(0.0) as usize, k))
        .collect();
    wanted.sort_unstable();

    let mut snapshots = vec![None; snapshot_times.len()];
    let mut history = Vec::with_capacity(n_steps + 1);
    let mut state = initial.clone();
    let mut next_wanted = 0;
    let t0 = initial.t;
    for k in 0..=n_steps {
        if k > 0 {
            advance(&mut state, params, dt, Physics::Full)?;
            // avoid drift from repeated addition
            state.t = t0 + k as f64 * dt;
        }
        history.push(NormSample {
            t: state.t,
            norm: state.l2_norm(),
        });
        while next_wanted < wanted.len() && wanted[next_wanted].0 == k {
            snapshots[wanted[next_wanted].1] = Some(state.clone());
            next_wanted += 1;
        }
    }
    // times past the end get the final state
    let snapshots = snapshots
        .into_iter()
        .map(|s| s.unwrap_or_else(|| state.clone()))
        .collect();
    Ok(Simulation { history, snapshots })
}

/// Least-squares exponential fit of a norm history.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    /// Slope of `log norm` against `t`; estimates `lambda_0(S)`.
    pub rate: f64,
    pub amplitude: f64,
    pub r_squared: f64,
    pub window: (f64, f64),
    pub samples: usize,
}

pub fn fit_decay(history: &[NormSample], window: (f64, f64)) -> Result<DecayFit> {
    let (t_start, t_end) = window;
    let inside: Vec<&NormSample> = history.iter().filter(|s| s.t >= t_start && s.t <= t_end).collect();
    if inside.len() < MIN_FIT_SAMPLES {
        return Err(Error::DegenerateWindow(format!(
            "{} samples in [{t_start}, {t_end}], need {MIN_FIT_SAMPLES}",
            inside.len()
        )));
    }
    if let Some(bad) = inside.iter().find(|s| !(s.norm >= UNDERFLOW_FLOOR)) {
        return Err(Error::DegenerateWindow(format!(
            "norm {:e} at t = {} underflows",
            bad.norm, bad.t
        )));
    }
    let n = inside.len() as f64;
    let mean_t = inside.iter().map(|s| s.t).sum::<f64>() / n;
    let mean_y = inside.iter().map(|s| s.norm.ln()).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for s in &inside {
        let dt = s.t - mean_t;
        let dy = s.norm.ln() - mean_y;
        sxx += dt * dt;
        sxy += dt * dy;
        syy += dy * dy;
    }
    let rate = sxy / sxx;
    let intercept = mean_y - rate * mean_t;
    let r_squared = if syy > 0.0 { sxy * sxy / (sxx * syy) } else { 1.0 };
    Ok(DecayFit {
        rate,
        amplitude: intercept.exp(),
        r_squared,
        window,
        samples: inside.len(),
    })
}

/// Starts at `max(2, 1/S) + 1` and ends where the norm first drops below
/// `1e-12` of its initial value (or at the end of the history).
pub fn default_fit_window(params: &ModelParams, history: &[NormSample]) -> (f64, f64) {
    let start = params.washout_time().max(2.0) + 1.0;
    let floor = history.first().map_or(0.0, |s| s.norm * 1e-12);
    let end = history
        .iter()
        .find(|s| s.norm < floor)
        .or(history.last())
        .map_or(start, |s| s.t);
    (start, end)
}

/// Time by which a solution started from data of norm one has decayed to
/// `1e-12` of it, plus the fit start; long enough for `default_fit_window`.
pub fn default_t_end(params: &ModelParams) -> f64 {
    let rate = -dominant(params).lambda.re;
    params.washout_time().max(2.0) + 1.0 + 1.2 * 12.0 * std::f64::consts::LN_10 / rate
}

/// L2 distance between the normalized, sign-aligned state and the unit-L2
/// dominant eigenfunction on the same grid.
pub fn profile_distance(state: &State, params: &ModelParams) -> Result<f64> {
    let norm = state.l2_norm();
    if norm == 0.0 {
        return Err(Error::ZeroState);
    }
    let target = evaluate(&dominant(params), &state.grid()).normalized();
    let eu: Vec<f64> = target.u.iter().map(|z: &Complex64| z.re).collect();
    let ev: Vec<f64> = target.v.iter().map(|z| z.re).collect();
    let dx = state.dx();
    let inner = trapezoid_inner(&state.u, &state.v, &eu, &ev, dx);
    let scale = if inner < 0.0 { -1.0 / norm } else { 1.0 / norm };
    let du: Vec<f64> = state.u.iter().zip(&eu).map(|(a, b)| scale * a - b).collect();
    let dv: Vec<f64> = state.v.iter().zip(&ev).map(|(a, b)| scale * a - b).collect();
    Ok(trapezoid_inner(&du, &dv, &du, &dv, dx).sqrt())
}

/// Max over interior nodes of `|p_tt + 2 p_t - S^2 p_xx|` for `p = u + v`,
/// with centered differences over three states equally spaced in time.
pub fn telegraph_residual(snapshots: [&State; 3], params: &ModelParams) -> f64 {
    let [prev, mid, next] = snapshots;
    let dt = mid.t - prev.t;
    debug_assert!(((next.t - mid.t) - dt).abs() <= 1e-9 * dt.abs());
    let dx = mid.dx();
    let s2 = params.s() * params.s();
    let p = |st: &State, i: usize| st.u[i] + st.v[i];
    (1..mid.intervals())
        .map(|i| {
            let p_tt = (p(next, i) - 2.0 * p(mid, i) + p(prev, i)) / (dt * dt);
            let p_t = (p(next, i) - p(prev, i)) / (2.0 * dt);
            let p_xx = (p(mid, i + 1) - 2.0 * p(mid, i) + p(mid, i - 1)) / (dx * dx);
            (p_tt + 2.0 * p_t - s2 * p_xx).abs()
        })
        .fold(0.0, f64::max)
}

/// Largest first-difference quotient of `u` and `v`, relative to the state's
/// sup norm. Of order one for smooth data, of order `1/dx` across a jump.
pub fn roughness(state: &State) -> f64 {
    let sup = state.u.iter().chain(&state.v).fold(0.0_f64, |m, w| m.max(w.abs()));
    if sup == 0.0 {
        return 0.0;
    }
    let dx = state.dx();
    let max_diff = |w: &[f64]| w.windows(2).fold(0.0_f64, |m, p| m.max((p[1] - p[0]).abs()));
    max_diff(&state.u).max(max_diff(&state.v)) / (dx * sup)
}

#[derive(Debug, Clone, PartialEq)]
pub struct WashoutReport {
    /// First time after which the roughness stays below `threshold`
    /// (zero if it never exceeds it).
    pub collapse_time: f64,
    /// `sqrt(N)`: geometric mean of the smooth scale (order one) and the jump
    /// scale (order `N`).
    pub threshold: f64,
    pub series: Vec<(f64, f64)>,
}

/// Track the roughness of a solution started from discontinuous data until
/// `t_end` and report when the discontinuities have left the domain.
pub fn washout_regularity(initial: &State, params: &ModelParams, t_end: f64) -> Result<WashoutReport> {
    let dt = unit_cfl_dt(params, initial.intervals());
    let threshold = (initial.intervals() as f64).sqrt();
    let mut state = initial.clone();
    let mut series = vec![(state.t, roughness(&state))];
    for k in 1..=steps_to(t_end, dt) {
        advance(&mut state, params, dt, Physics::Full)?;
        state.t = initial.t + k as f64 * dt;
        series.push((state.t, roughness(&state)));
    }
    let collapse_time = match series.iter().rposition(|&(_, r)| r > threshold) {
        Some(k) if k + 1 < series.len() => series[k + 1].0,
        Some(k) => series[k].0,
        None => initial.t,
    };
    Ok(WashoutReport {
        collapse_time,
        threshold,
        series,
    })
}
