//! Closed-form eigenfunctions and their geometry.
//!
//! For a root `nu` the eigenfunction is `u(x) = sin(nu (1/2 + x))` with
//! `v(x) = +/- sin(nu (1/2 - x))` by parity, the linear pair `(1 + 2x, 1 - 2x)`
//! at `S = 1`, and `sinh(y0 (1/2 +/- x))` for the dominant mode when `S > 1`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::spectrum::{dominant, EigenPair, Nu};

const MAX_REFINEMENTS: usize = 3;
const MAX_ARG_INCREMENT: f64 = PI / 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Coefficient one in front of `sin(nu (1/2 + x))`.
    CanonicalCoefficient,
    /// Unit trapezoidal L2 norm of `(u, v)`.
    UnitL2,
}

/// An eigenfunction sampled on a grid in `[-1/2, 1/2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenfunctionGrid {
    pub x: Vec<f64>,
    pub u: Vec<Complex64>,
    pub v: Vec<Complex64>,
    pub pair: EigenPair,
    pub normalization: Normalization,
}

impl EigenfunctionGrid {
    /// Trapezoidal `sqrt(int |u|^2 + |v|^2 dx)`.
    pub fn l2_norm(&self) -> f64 {
        let density: Vec<f64> = self
            .u
            .iter()
            .zip(&self.v)
            .map(|(u, v)| u.norm_sqr() + v.norm_sqr())
            .collect();
        trapezoid(&self.x, &density).sqrt()
    }

    pub fn normalized(mut self) -> Self {
        let norm = self.l2_norm();
        if norm > 0.0 {
            for w in self.u.iter_mut().chain(self.v.iter_mut()) {
                *w /= norm;
            }
        }
        self.normalization = Normalization::UnitL2;
        self
    }
}

/// Grid of `intervals + 1` points, exactly symmetric about `x = 0`.
pub fn uniform_grid(intervals: usize) -> Vec<f64> {
    assert!(intervals >= 1);
    let denom = 2.0 * intervals as f64;
    (0..=intervals)
        .map(|i| (2.0 * i as f64 - intervals as f64) / denom)
        .collect()
}

/// Composite trapezoid rule on an arbitrary sorted grid.
pub fn trapezoid(x: &[f64], f: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), f.len());
    x.windows(2)
        .zip(f.windows(2))
        .map(|(xs, fs)| 0.5 * (xs[1] - xs[0]) * (fs[0] + fs[1]))
        .sum()
}

/// Speed the pair belongs to.
pub fn pair_speed(pair: &EigenPair) -> f64 {
    match pair.nu {
        Nu::Root(r) => r.s,
        Nu::DoubleRootAtSOne => 1.0,
    }
}

/// Canonical eigenfunction value at a single point.
pub fn profile_at(pair: &EigenPair, x: f64) -> (Complex64, Complex64) {
    match pair.nu {
        Nu::DoubleRootAtSOne => (Complex64::new(1.0 + 2.0 * x, 0.0), Complex64::new(1.0 - 2.0 * x, 0.0)),
        Nu::Root(r) if r.n == 0 && r.value.re == 0.0 => {
            let y = r.value.im;
            (
                Complex64::new((y * (0.5 + x)).sinh(), 0.0),
                Complex64::new((y * (0.5 - x)).sinh(), 0.0),
            )
        }
        Nu::Root(r) => {
            let u = (r.value * (0.5 + x)).sin();
            let v = r.parity.sign() * (r.value * (0.5 - x)).sin();
            if r.is_real {
                (Complex64::new(u.re, 0.0), Complex64::new(v.re, 0.0))
            } else {
                (u, v)
            }
        }
    }
}

/// Sample the canonical eigenfunction on a sorted grid inside `[-1/2, 1/2]`.
pub fn evaluate(pair: &EigenPair, grid: &[f64]) -> EigenfunctionGrid {
    debug_assert!(grid.windows(2).all(|w| w[0] <= w[1]));
    debug_assert!(grid.iter().all(|x| (-0.5..=0.5).contains(x)));
    let (u, v) = grid.iter().map(|&x| profile_at(pair, x)).unzip();
    EigenfunctionGrid {
        x: grid.to_vec(),
        u,
        v,
        pair: *pair,
        normalization: Normalization::CanonicalCoefficient,
    }
}

/// Zero count (real case) or half-turn count (complex case) of an
/// eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RotationSummary {
    pub n_expected: usize,
    pub half_turns_u: usize,
    pub half_turns_v: usize,
    /// Strict monotonicity of `arg u` and `arg v` with the orientation set by
    /// `j`. `None` for real eigenfunctions, whose argument only jumps.
    pub monotone_argument: Option<bool>,
}

impl RotationSummary {
    pub fn is_valid(&self) -> bool {
        self.half_turns_u == self.n_expected
            && self.half_turns_v == self.n_expected
            && self.monotone_argument.unwrap_or(true)
    }
}

fn sign_changes(values: impl Iterator<Item = f64>) -> usize {
    let mut last = 0.0_f64;
    let mut count = 0;
    for w in values {
        if w == 0.0 {
            continue;
        }
        if last != 0.0 && w.signum() != last.signum() {
            count += 1;
        }
        last = w;
    }
    count
}

/// Unwrapped argument increments along a sampled curve.
fn increments(points: &[Complex64]) -> Vec<f64> {
    points.windows(2).map(|w| (w[1] / w[0]).arg()).collect()
}

fn refine(x: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * x.len());
    for w in x.windows(2) {
        out.push(w[0]);
        out.push(0.5 * (w[0] + w[1]));
    }
    out.extend(x.last());
    out
}

/// Count zeros (real eigenfunctions) or half-turns around the origin
/// (complex eigenfunctions) of `u` and `v`.
///
/// In the complex case the argument is continued from the boundary zero,
/// where `u ~ nu (1/2 + x)`, and the grid is refined until every increment
/// stays below `pi/2`. Since `u(1/2) = sin(nu) = +/- S nu`, the end points
/// are aligned with `nu` and the total turn is an exact multiple of `pi`.
pub fn rotation_number(f: &EigenfunctionGrid) -> Result<RotationSummary> {
    let pair = f.pair;
    let interior = |w: &[Complex64]| -> Vec<f64> { w[1..w.len() - 1].iter().map(|z| z.re).collect() };
    if pair.is_real() {
        return Ok(RotationSummary {
            n_expected: pair.n,
            half_turns_u: sign_changes(interior(&f.u).into_iter()),
            half_turns_v: sign_changes(interior(&f.v).into_iter()),
            monotone_argument: None,
        });
    }

    let nu = pair.nu.value();
    let sign = pair.parity.sign();
    let upper = pair.j == Some(1);
    let mut x = f.x.clone();
    for _ in 0..=MAX_REFINEMENTS {
        let sampled = evaluate(&pair, &x);
        let last = x.len() - 1;
        // u vanishes at x = -1/2, v at x = 1/2: replace those samples by the
        // limiting direction of the curve
        let mut u_path = vec![nu];
        u_path.extend_from_slice(&sampled.u[1..]);
        let mut v_path = sampled.v[..last].to_vec();
        v_path.push(sign * nu);

        let du = increments(&u_path);
        let dv = increments(&v_path);
        // sampled increments alias once the phase advance per cell passes pi,
        // so bound the advance a priori as well
        let widest = x.windows(2).map(|w| w[1] - w[0]).fold(0.0_f64, f64::max);
        let too_coarse =
            widest * nu.re.abs() >= MAX_ARG_INCREMENT || du.iter().chain(&dv).any(|d| d.abs() >= MAX_ARG_INCREMENT);
        if too_coarse {
            x = refine(&x);
            continue;
        }
        let total_u: f64 = du.iter().sum();
        let total_v: f64 = dv.iter().sum();
        let monotone = if upper {
            du.iter().all(|&d| d < 0.0) && dv.iter().all(|&d| d > 0.0)
        } else {
            du.iter().all(|&d| d > 0.0) && dv.iter().all(|&d| d < 0.0)
        };
        return Ok(RotationSummary {
            n_expected: pair.n,
            half_turns_u: (total_u.abs() / PI).round() as usize,
            half_turns_v: (total_v.abs() / PI).round() as usize,
            monotone_argument: Some(monotone),
        });
    }
    Err(Error::GridTooCoarse {
        refinements: MAX_REFINEMENTS,
    })
}

/// Whether the dominant eigenfunction is strictly positive on the interior
/// points `[-1/2 + h, 1/2 - h]` of a uniform grid.
pub fn dominant_positivity(params: &ModelParams, grid_size: usize) -> bool {
    let f = evaluate(&dominant(params), &uniform_grid(grid_size));
    let n = f.x.len();
    (1..n - 1).all(|i| f.u[i].re > 0.0 && f.v[i].re > 0.0)
}

/// Trapezoidal `2 int u0 v0 dx` for the dominant eigenfunction. Positive
/// values witness that `lambda_0` has no generalized eigenvector.
pub fn simplicity_integral(params: &ModelParams, grid_size: usize) -> f64 {
    let f = evaluate(&dominant(params), &uniform_grid(grid_size));
    let density: Vec<f64> = f.u.iter().zip(&f.v).map(|(u, v)| 2.0 * (u * v).re).collect();
    trapezoid(&f.x, &density)
}

/// Max residual of the eigenvalue system
/// `-S u' - u + v = lambda u`, `S v' + u - v = lambda v` on the interior of a
/// uniform grid, with centered differences, relative to `max |(u, v)|`.
pub fn eigen_residual(pair: &EigenPair, grid_size: usize) -> f64 {
    let f = evaluate(pair, &uniform_grid(grid_size));
    let s = pair_speed(pair);
    let h = 1.0 / grid_size as f64;
    let lambda = pair.lambda;
    let scale = f.u.iter().chain(&f.v).map(|z| z.norm()).fold(0.0_f64, f64::max);
    let mut worst = 0.0_f64;
    for i in 1..grid_size {
        let du = (f.u[i + 1] - f.u[i - 1]) / (2.0 * h);
        let dv = (f.v[i + 1] - f.v[i - 1]) / (2.0 * h);
        let r1 = -s * du - f.u[i] + f.v[i] - lambda * f.u[i];
        let r2 = s * dv + f.u[i] - f.v[i] - lambda * f.v[i];
        worst = worst.max(r1.norm()).max(r2.norm());
    }
    worst / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{lambda_from_nu, nu_root, spectrum_slice, S_UNIT_DECAY};

    fn params(s: f64) -> ModelParams {
        ModelParams::new(s).unwrap()
    }

    #[test]
    fn linear_profile_at_s_one() {
        let pair = dominant(&params(1.0));
        let (u, v) = profile_at(&pair, 0.0);
        assert_eq!((u.re, v.re), (1.0, 1.0));
        let f = evaluate(&pair, &uniform_grid(10));
        assert_eq!(f.u[0].re, 0.0);
        assert_eq!(f.v[10].re, 0.0);
    }

    #[test]
    fn boundary_zeros() {
        for pair in spectrum_slice(&params(0.8), 4).unwrap() {
            let f = evaluate(&pair, &uniform_grid(64));
            assert_eq!(f.u[0], Complex64::new(0.0, 0.0));
            assert_eq!(*f.v.last().unwrap(), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn unit_decay_profile_is_a_cosine() {
        let pair = dominant(&params(S_UNIT_DECAY));
        for &x in &uniform_grid(20) {
            let (u, v) = profile_at(&pair, x);
            let expected = (PI * (0.5 + x) / 2.0).sin();
            assert!((u.re - expected).abs() < 1e-14);
            assert!((v.re - (PI * (0.5 - x) / 2.0).sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn parity_symmetry() {
        let grid = uniform_grid(50);
        for pair in spectrum_slice(&params(0.3), 5).unwrap() {
            let f = evaluate(&pair, &grid);
            let sign = pair.parity.sign();
            let n = grid.len() - 1;
            for i in 0..=n {
                assert!((f.v[i] - sign * f.u[n - i]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn unit_l2_normalization() {
        let pair = lambda_from_nu(&Nu::Root(nu_root(&params(0.8), 3, 1).unwrap()));
        let f = evaluate(&pair, &uniform_grid(500)).normalized();
        assert!((f.l2_norm() - 1.0).abs() < 1e-10);
        assert_eq!(f.normalization, Normalization::UnitL2);
    }

    #[test]
    fn rotation_complex_regime() {
        let pair = lambda_from_nu(&Nu::Root(nu_root(&params(0.8), 3, 1).unwrap()));
        let summary = rotation_number(&evaluate(&pair, &uniform_grid(400))).unwrap();
        assert_eq!(summary.half_turns_u, 3);
        assert_eq!(summary.half_turns_v, 3);
        assert_eq!(summary.monotone_argument, Some(true));
    }

    #[test]
    fn rotation_refines_coarse_grids() {
        let pair = lambda_from_nu(&Nu::Root(nu_root(&params(0.8), 6, 2).unwrap()));
        let summary = rotation_number(&evaluate(&pair, &uniform_grid(8))).unwrap();
        assert!(summary.is_valid(), "{summary:?}");
        // far too coarse even after three refinements
        let pair = lambda_from_nu(&Nu::Root(nu_root(&params(0.8), 60, 1).unwrap()));
        assert!(matches!(
            rotation_number(&evaluate(&pair, &uniform_grid(2))),
            Err(Error::GridTooCoarse { .. })
        ));
    }

    #[test]
    fn rotation_real_regime() {
        let pair = lambda_from_nu(&Nu::Root(nu_root(&params(0.05), 1, 1).unwrap()));
        let summary = rotation_number(&evaluate(&pair, &uniform_grid(200))).unwrap();
        assert_eq!(summary.half_turns_u, 1);
        assert_eq!(summary.monotone_argument, None);
        let summary = rotation_number(&evaluate(&dominant(&params(0.5)), &uniform_grid(200))).unwrap();
        assert_eq!((summary.half_turns_u, summary.half_turns_v), (0, 0));
    }

    #[test]
    fn dominant_is_positive() {
        for s in [0.5, 1.0, 3.0] {
            assert!(dominant_positivity(&params(s), 1000), "S={s}");
        }
    }

    #[test]
    fn simplicity_at_s_one() {
        // trapezoid on 2(1 - 4x^2): the Euler-Maclaurin series stops after the
        // h^2 term, so T(h) = 4/3 - (4/3) h^2 exactly
        for grid_size in [10usize, 1000, 10_000] {
            let h = 1.0 / grid_size as f64;
            let expected = 4.0 / 3.0 * (1.0 - h * h);
            assert!((simplicity_integral(&params(1.0), grid_size) - expected).abs() < 1e-12);
        }
        assert!((simplicity_integral(&params(1.0), 100_000) - 4.0 / 3.0).abs() < 1e-8);
    }

    #[test]
    fn simplicity_second_order() {
        let p = params(0.5);
        let exact = {
            // Richardson from two fine grids as the reference
            let a = simplicity_integral(&p, 4000);
            let b = simplicity_integral(&p, 8000);
            (4.0 * b - a) / 3.0
        };
        let e1 = (simplicity_integral(&p, 50) - exact).abs();
        let e2 = (simplicity_integral(&p, 100) - exact).abs();
        let ratio = e1 / e2;
        assert!((ratio - 4.0).abs() < 0.05, "ratio {ratio}");
    }

    #[test]
    fn eigen_residual_second_order() {
        for pair in spectrum_slice(&params(0.8), 3).unwrap() {
            let r1 = eigen_residual(&pair, 200);
            let r2 = eigen_residual(&pair, 400);
            assert!((r1 / r2 - 4.0).abs() < 0.2, "n={} ratio {}", pair.n, r1 / r2);
        }
    }
}
