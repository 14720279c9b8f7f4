use crw_core::eigenfunctions::{evaluate, rotation_number, uniform_grid};
use crw_core::oracle::refine_eigenvalue;
use crw_core::simulator::{
    advance, default_fit_window, default_t_end, fit_decay, profile_distance, steps_to, unit_cfl_dt, InitialData,
    NormSample, Physics, MIN_FIT_SAMPLES,
};
use crw_core::spectrum::{
    asymptotic_lambda, critical_s, dominant, lambda_from_nu, nu_root, spectrum_slice, RESIDUAL_TOL,
};
use crw_core::{EigenPair, Error, ModelParams, Nu};
use serde_json::{Map, Value};

use crate::args::{CriticalArgs, EigenfunctionArgs, Init, SimulateArgs, SpectrumArgs, SpeedArgs};
use crate::output::{number, Cell, Meta, Table, SCHEMA_VERSION};

pub const EXIT_INVARIANT: u8 = 1;
pub const EXIT_NONCONVERGENCE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

pub const ORACLE_TOL: f64 = 1e-8;
pub const DECAY_TOL: f64 = 0.01;
pub const BOUNDARY_TOL: f64 = 1e-12;
pub const MAX_ROWS: usize = 1000;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParameter(_) | Error::CflViolation { .. } => EXIT_USAGE,
            Error::ZeroState => EXIT_INVARIANT,
            Error::ConvergenceFailure { .. }
            | Error::GridTooCoarse { .. }
            | Error::NoConvergence { .. }
            | Error::BoundaryTooClose { .. }
            | Error::DegenerateWindow(_) => EXIT_NONCONVERGENCE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// A finished command: its table, metadata and any violated invariants.
pub struct Outcome {
    pub table: Table,
    pub meta: Meta,
    pub violations: Vec<String>,
}

fn base_meta(command: &str, config: Map<String, Value>, tolerances: &[(&str, f64)]) -> Meta {
    let mut meta = Meta::default();
    meta.insert("schema_version", SCHEMA_VERSION);
    meta.insert("version", env!("CARGO_PKG_VERSION"));
    meta.insert("command", command);
    meta.insert("config", Value::Object(config));
    let tol: Map<String, Value> = tolerances.iter().map(|&(k, v)| (k.to_string(), number(v))).collect();
    meta.insert("tolerances", Value::Object(tol));
    meta
}

fn speed_config(speed: &SpeedArgs, params: &ModelParams) -> Map<String, Value> {
    let mut config = Map::new();
    config.insert("S".into(), number(params.s()));
    let dim = params.dimensional();
    config.insert("gamma".into(), dim.map_or(Value::Null, |d| number(d.gamma)));
    config.insert("mu".into(), dim.map_or(Value::Null, |d| number(d.mu)));
    config.insert("L".into(), dim.map_or(Value::Null, |d| number(d.length)));
    config.insert(
        "speed_input".into(),
        if speed.s.is_some() { "S" } else { "dimensional" }.into(),
    );
    config
}

fn params_of(speed: &SpeedArgs) -> Result<ModelParams, Failure> {
    speed.params().map_err(Failure::usage)
}

fn residual_of(pair: &EigenPair) -> f64 {
    match pair.nu {
        Nu::Root(r) => r.residual(),
        Nu::DoubleRootAtSOne => 0.0,
    }
}

fn j_cell(pair: &EigenPair) -> Cell {
    Cell::Int(pair.j.map_or(0, i64::from))
}

pub fn spectrum(args: &SpectrumArgs) -> Result<Outcome, Failure> {
    let p = params_of(&args.speed)?;
    let slice = spectrum_slice(&p, args.n_max)?;
    let l0 = slice[0].lambda.re;
    let mut table = Table::new(&[
        "n",
        "j",
        "re_nu",
        "im_nu",
        "re_lambda",
        "im_lambda",
        "residual",
        "oracle_distance",
        "asymptotic_gap",
    ]);
    let mut violations = Vec::new();
    let mut worst_oracle = 0.0_f64;
    for pair in &slice {
        let nu = pair.nu.value();
        let shot = refine_eigenvalue(&p, pair.lambda)?;
        let oracle = (shot.lambda - pair.lambda).norm();
        worst_oracle = worst_oracle.max(oracle);
        let gap = match pair.j {
            Some(j) if pair.n >= 1 => (pair.lambda - asymptotic_lambda(&p, pair.n, j)).norm(),
            _ => f64::NAN,
        };
        let tag = format!("n={} j={}", pair.n, pair.j.unwrap_or(0));
        if let Nu::Root(r) = pair.nu {
            if !r.within_tolerance() {
                violations.push(format!("residual_tolerance ({tag}): {:e}", r.residual()));
            }
        }
        if !(oracle < ORACLE_TOL) {
            violations.push(format!("oracle_agreement ({tag}): {oracle:e}"));
        }
        if pair.n >= 1 && !(pair.lambda.re < l0) {
            violations.push(format!("dominance ({tag}): {} >= {l0}", pair.lambda.re));
        }
        if !pair.is_real() && !(pair.lambda.re < -1.0 - p.s()) {
            violations.push(format!("complex_gap ({tag}): {} >= {}", pair.lambda.re, -1.0 - p.s()));
        }
        table.push(vec![
            pair.n.into(),
            j_cell(pair),
            nu.re.into(),
            nu.im.into(),
            pair.lambda.re.into(),
            pair.lambda.im.into(),
            residual_of(pair).into(),
            oracle.into(),
            gap.into(),
        ]);
    }
    let mut config = speed_config(&args.speed, &p);
    config.insert("n_max".into(), args.n_max.into());
    let mut meta = base_meta(
        "spectrum",
        config,
        &[("residual", RESIDUAL_TOL), ("oracle", ORACLE_TOL)],
    );
    let mut summary = Map::new();
    summary.insert("rows".into(), table.rows.len().into());
    summary.insert("lambda_0".into(), number(l0));
    summary.insert("max_oracle_distance".into(), number(worst_oracle));
    summary.insert("invariants_ok".into(), violations.is_empty().into());
    meta.insert("summary", Value::Object(summary));
    Ok(Outcome {
        table,
        meta,
        violations,
    })
}

pub fn critical(args: &CriticalArgs) -> Result<Outcome, Failure> {
    let mut table = Table::new(&["m", "nu_m", "s_m", "tan_residual"]);
    let mut violations = Vec::new();
    let mut prev = f64::INFINITY;
    for m in 1..=args.n_max {
        let c = critical_s(m);
        // tan x - x has derivative x^2 at the root, so the gate uses the cos-scaled form
        let scaled = (c.nu_m.sin() - c.nu_m * c.nu_m.cos()).abs();
        if !(scaled < RESIDUAL_TOL * c.nu_m) {
            violations.push(format!("tan_residual (m={m}): {scaled:e}"));
        }
        if !(c.s_m < prev) {
            violations.push(format!("decreasing (m={m}): {} >= {prev}", c.s_m));
        }
        prev = c.s_m;
        table.push(vec![
            m.into(),
            c.nu_m.into(),
            c.s_m.into(),
            (c.nu_m.tan() - c.nu_m).abs().into(),
        ]);
    }
    let mut config = Map::new();
    config.insert("n_max".into(), args.n_max.into());
    let mut meta = base_meta("critical", config, &[("residual", RESIDUAL_TOL)]);
    let mut summary = Map::new();
    summary.insert("rows".into(), table.rows.len().into());
    summary.insert("invariants_ok".into(), violations.is_empty().into());
    meta.insert("summary", Value::Object(summary));
    Ok(Outcome {
        table,
        meta,
        violations,
    })
}

fn initial_data(init: Init, seed: u64) -> InitialData {
    match init {
        Init::Eigen => InitialData::Eigen,
        Init::Box => InitialData::Box,
        Init::Hat => InitialData::Hat,
        Init::Random => InitialData::Random { seed },
    }
}

pub fn simulate(args: &SimulateArgs) -> Result<Outcome, Failure> {
    let p = params_of(&args.speed)?;
    if args.intervals < 2 {
        return Err(Failure::usage(format!(
            "--N must be at least 2, got {}",
            args.intervals
        )));
    }
    let t_end = args.t_end.unwrap_or_else(|| default_t_end(&p));
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Failure::usage(format!("--t-end must be positive, got {t_end}")));
    }
    let mut state = initial_data(args.init, args.seed).build(&p, args.intervals);
    let dt = unit_cfl_dt(&p, args.intervals);
    let steps = steps_to(t_end, dt);
    let stride = (steps / MAX_ROWS).max(1);
    let mut table = Table::new(&["t", "norm", "profile_distance"]);
    let mut history = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        if k > 0 {
            advance(&mut state, &p, dt, Physics::Full)?;
            state.t = k as f64 * dt;
        }
        let norm = state.l2_norm();
        history.push(NormSample { t: state.t, norm });
        if k % stride == 0 || k == steps {
            let distance = profile_distance(&state, &p).unwrap_or(f64::NAN);
            table.push(vec![state.t.into(), norm.into(), distance.into()]);
        }
    }
    let window = default_fit_window(&p, &history);
    let fit = fit_decay(&history, window)?;
    let l0 = dominant(&p).lambda.re;
    let rel = ((fit.rate - l0) / l0).abs();
    let mut violations = Vec::new();
    if !(rel < DECAY_TOL) {
        violations.push(format!(
            "decay_rate: fitted {} vs lambda_0 {l0} (relative {rel:e})",
            fit.rate
        ));
    }

    let mut config = speed_config(&args.speed, &p);
    config.insert("N".into(), args.intervals.into());
    config.insert("t_end".into(), number(t_end));
    config.insert("dt".into(), number(dt));
    config.insert(
        "init".into(),
        match args.init {
            Init::Eigen => "eigen",
            Init::Box => "box",
            Init::Hat => "hat",
            Init::Random => "random",
        }
        .into(),
    );
    config.insert("seed".into(), args.seed.into());
    config.insert("row_stride".into(), stride.into());
    let mut meta = base_meta(
        "simulate",
        config,
        &[
            ("decay_relative", DECAY_TOL),
            ("min_fit_samples", MIN_FIT_SAMPLES as f64),
        ],
    );
    let mut summary = Map::new();
    summary.insert("rate".into(), number(fit.rate));
    summary.insert("amplitude".into(), number(fit.amplitude));
    summary.insert("r_squared".into(), number(fit.r_squared));
    summary.insert("window_start".into(), number(fit.window.0));
    summary.insert("window_end".into(), number(fit.window.1));
    summary.insert("fit_samples".into(), fit.samples.into());
    summary.insert("lambda_0".into(), number(l0));
    summary.insert("relative_error".into(), number(rel));
    summary.insert("pass".into(), violations.is_empty().into());
    meta.insert("summary", Value::Object(summary));
    Ok(Outcome {
        table,
        meta,
        violations,
    })
}

pub fn eigenfunction(args: &EigenfunctionArgs) -> Result<Outcome, Failure> {
    let p = params_of(&args.speed)?;
    if args.intervals < 2 {
        return Err(Failure::usage(format!(
            "--N must be at least 2, got {}",
            args.intervals
        )));
    }
    let pair = if args.n == 0 {
        dominant(&p)
    } else {
        lambda_from_nu(&Nu::Root(nu_root(&p, args.n, args.j)?))
    };
    let f = evaluate(&pair, &uniform_grid(args.intervals));
    let summary_rot = rotation_number(&f)?;
    let mut table = Table::new(&["x", "re_u", "im_u", "re_v", "im_v"]);
    for i in 0..f.x.len() {
        table.push(vec![
            f.x[i].into(),
            f.u[i].re.into(),
            f.u[i].im.into(),
            f.v[i].re.into(),
            f.v[i].im.into(),
        ]);
    }

    let mut violations = Vec::new();
    if !summary_rot.is_valid() {
        violations.push(format!("rotation: {summary_rot:?}"));
    }
    let scale = f.u.iter().chain(&f.v).map(|z| z.norm()).fold(0.0, f64::max);
    let last = f.x.len() - 1;
    if f.u[0].norm() > BOUNDARY_TOL * scale || f.v[last].norm() > BOUNDARY_TOL * scale {
        violations.push(format!("boundary: u(-1/2) = {}, v(1/2) = {}", f.u[0], f.v[last]));
    }
    let positive = (1..last).all(|i| f.u[i].re > 0.0 && f.v[i].re > 0.0);
    if args.n == 0 && !positive {
        violations.push("positivity: dominant eigenfunction changes sign".into());
    }

    let mut config = speed_config(&args.speed, &p);
    config.insert("n".into(), args.n.into());
    config.insert("j".into(), pair.j.map_or(0, u64::from).into());
    config.insert("N".into(), args.intervals.into());
    let mut meta = base_meta("eigenfunction", config, &[("boundary", BOUNDARY_TOL)]);
    let mut summary = Map::new();
    summary.insert("re_lambda".into(), number(pair.lambda.re));
    summary.insert("im_lambda".into(), number(pair.lambda.im));
    summary.insert("n_expected".into(), summary_rot.n_expected.into());
    summary.insert("half_turns_u".into(), summary_rot.half_turns_u.into());
    summary.insert("half_turns_v".into(), summary_rot.half_turns_v.into());
    summary.insert(
        "monotone_argument".into(),
        summary_rot.monotone_argument.map_or(Value::Null, Value::Bool),
    );
    summary.insert("rotation_valid".into(), summary_rot.is_valid().into());
    summary.insert("interior_positive".into(), positive.into());
    meta.insert("summary", Value::Object(summary));
    Ok(Outcome {
        table,
        meta,
        violations,
    })
}
