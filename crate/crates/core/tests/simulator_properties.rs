use crw_core::simulator::{
    advance, default_fit_window, default_t_end, fit_decay, profile_distance, simulate, unit_cfl_dt, InitialData,
    Physics, State,
};
use crw_core::spectrum::{dominant, S_UNIT_DECAY};
use crw_core::ModelParams;

fn params(s: f64) -> ModelParams {
    ModelParams::new(s).unwrap()
}

fn fitted_rate(p: &ModelParams, init: InitialData, n: usize) -> f64 {
    let state = init.build(p, n);
    let sim = simulate(&state, p, default_t_end(p), &[]).unwrap();
    let fit = fit_decay(&sim.history, default_fit_window(p, &sim.history)).unwrap();
    assert!(fit.r_squared >= 0.999, "{fit:?}");
    fit.rate
}

#[test]
fn decay_sandwich_tightens() {
    for s in [0.5, S_UNIT_DECAY, 1.0, 2.0] {
        let p = params(s);
        let l0 = dominant(&p).lambda.re;
        let coarse = (fitted_rate(&p, InitialData::Hat, 100) - l0).abs();
        let fine = (fitted_rate(&p, InitialData::Hat, 800) - l0).abs();
        assert!(fine < coarse || fine < 1e-9, "S={s}: {coarse:e} -> {fine:e}");
        assert!(fine / l0.abs() < 1e-3, "S={s}: {fine:e}");
    }
}

#[test]
fn eigen_data_keeps_its_shape() {
    let p = params(0.5);
    let state = InitialData::Eigen.build(&p, 2000);
    let times: Vec<f64> = (1..=10).map(|k| k as f64).collect();
    let sim = simulate(&state, &p, 10.0, &times).unwrap();
    for snap in &sim.snapshots {
        assert!(profile_distance(snap, &p).unwrap() < 1e-6, "t={}", snap.t);
    }
}

fn distance_series(p: &ModelParams, init: InitialData, n: usize, t_end: f64) -> Vec<(f64, f64)> {
    let mut state = init.build(p, n);
    let dt = unit_cfl_dt(p, n);
    let mut out = Vec::new();
    while state.t < t_end {
        advance(&mut state, p, dt, Physics::Full).unwrap();
        out.push((state.t, profile_distance(&state, p).unwrap()));
    }
    out
}

const GENERIC: [InitialData; 3] = [InitialData::Box, InitialData::Hat, InitialData::Random { seed: 3 }];

#[test]
fn profile_converges_monotonically_in_real_regime() {
    // below S_1 the subdominant eigenvalue is real
    let p = params(0.15);
    for init in GENERIC {
        let series = distance_series(&p, init, 600, 60.0);
        let after: Vec<f64> = series
            .iter()
            .filter(|(t, _)| *t > 1.0 / 0.15 + 1.0)
            .map(|&(_, d)| d)
            .collect();
        // above the O(dx^2) mismatch between discrete and exact eigenfunction
        for w in after.windows(2).filter(|w| w[0] > 1e-4) {
            assert!(w[1] <= w[0], "{init:?}: {} > {}", w[1], w[0]);
        }
        assert!(*after.last().unwrap() < 1e-3, "{init:?}: {:e}", after.last().unwrap());
    }
}

#[test]
fn profile_envelope_decreases_in_complex_regime() {
    let p = params(0.8);
    for init in GENERIC {
        let series = distance_series(&p, init, 1000, 12.0);
        let maxima: Vec<f64> = (2..12)
            .map(|k| {
                series
                    .iter()
                    .filter(|(t, _)| *t > k as f64 && *t <= k as f64 + 1.0)
                    .map(|&(_, d)| d)
                    .fold(0.0, f64::max)
            })
            .collect();
        for w in maxima.windows(2) {
            assert!(w[1] < w[0], "{init:?}: {maxima:?}");
        }
        assert!(*maxima.last().unwrap() < 1e-3, "{init:?}: {maxima:?}");
    }
}

#[test]
fn generic_data_beats_second_mode_shape() {
    let p = params(1.0);
    let n = 1000;
    // odd shape, close to the first antisymmetric mode
    let odd = State::from_fn(n, |x| {
        (
            (2.0 * std::f64::consts::PI * x).sin(),
            -(2.0 * std::f64::consts::PI * x).sin(),
        )
    });
    let box_data = InitialData::Box.build(&p, n);
    let t = 2.5;
    let a = simulate(&odd, &p, t, &[t]).unwrap();
    let b = simulate(&box_data, &p, t, &[t]).unwrap();
    let d_odd = profile_distance(&a.snapshots[0], &p).unwrap();
    let d_box = profile_distance(&b.snapshots[0], &p).unwrap();
    assert!(d_odd > d_box, "{d_odd} <= {d_box}");
}

#[test]
fn norm_eventually_decreasing() {
    for s in [0.3, 1.0, 4.0] {
        let p = params(s);
        for init in [
            InitialData::Eigen,
            InitialData::Box,
            InitialData::Hat,
            InitialData::Random { seed: 11 },
            InitialData::Step,
        ] {
            let state = init.build(&p, 400);
            let sim = simulate(&state, &p, 1.0 / s + 3.0, &[]).unwrap();
            for w in sim.history.windows(2).filter(|w| w[0].t > 1.0 / s) {
                assert!(w[1].norm < w[0].norm, "S={s} {init:?} t={}", w[1].t);
            }
        }
    }
}
