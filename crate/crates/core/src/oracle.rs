//! Eigenvalues recomputed from the ODE alone.
//!
//! An eigenfunction of `lambda` solves the first-order system
//!
//! ```text
//! d/dx (u, v) = [ (-1 - lambda)/S    1/S          ] (u, v)
//!               [ -1/S               (1 + lambda)/S ]
//! ```
//!
//! with `u(-1/2) = 0` and `v(1/2) = 0`. Starting from `(0, 1)` at `x = -1/2`
//! pins the first condition, so the eigenvalues are exactly the zeros of the
//! shooting map `F(lambda) = v(1/2)`. Nothing here refers to the
//! characteristic equations.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::ModelParams;

pub const MAX_SECANT_ITER: usize = 50;
/// Required `|F| / sup |(u, v)|` at a converged eigenvalue.
pub const BOUNDARY_TOL: f64 = 1e-10;
pub const CONTOUR_SAMPLES_PER_SIDE: usize = 256;
const MAX_CONTOUR_DOUBLINGS: usize = 6;
/// Target phase advance per RK4 step in `steps_for`.
const PHASE_PER_STEP: f64 = 2e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingResult {
    pub lambda: Complex64,
    /// `F(lambda) = v(1/2)`.
    pub boundary_value: Complex64,
    pub converged: bool,
    pub iterations: usize,
}

/// End point of a shooting trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shot {
    pub v_end: Complex64,
    /// `max |u|, |v|` along the trajectory.
    pub sup_norm: f64,
}

/// Integrate from `(0, 1)` at `x = -1/2` with `steps` classical RK4 steps.
pub fn shoot_trajectory(params: &ModelParams, lambda: Complex64, steps: usize) -> Shot {
    let s = params.s();
    let a = (-1.0 - lambda) / s;
    let b = 1.0 / s;
    let rhs = |u: Complex64, v: Complex64| (a * u + b * v, -b * u - a * v);

    let h = 1.0 / steps as f64;
    let mut u = Complex64::new(0.0, 0.0);
    let mut v = Complex64::new(1.0, 0.0);
    let mut sup_norm = 1.0_f64;
    for _ in 0..steps {
        let (k1u, k1v) = rhs(u, v);
        let (k2u, k2v) = rhs(u + 0.5 * h * k1u, v + 0.5 * h * k1v);
        let (k3u, k3v) = rhs(u + 0.5 * h * k2u, v + 0.5 * h * k2v);
        let (k4u, k4v) = rhs(u + h * k3u, v + h * k3v);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        sup_norm = sup_norm.max(u.norm()).max(v.norm());
    }
    Shot { v_end: v, sup_norm }
}

/// The shooting map `F(lambda) = v(1/2)`.
pub fn shoot(params: &ModelParams, lambda: Complex64, steps: usize) -> Complex64 {
    assert!(steps >= 100, "shooting needs at least 100 steps");
    shoot_trajectory(params, lambda, steps).v_end
}

/// Step count keeping the phase advance per step near `2e-3` for
/// eigenvalues around `lambda`.
pub fn steps_for(params: &ModelParams, lambda: Complex64) -> usize {
    let rate = ((1.0 + lambda).norm() + 1.0) / params.s();
    ((rate / PHASE_PER_STEP).ceil() as usize).clamp(2000, 400_000)
}

/// Secant iteration on the shooting map, seeded from `guess`.
pub fn refine_eigenvalue(params: &ModelParams, guess: Complex64) -> Result<ShootingResult> {
    refine_eigenvalue_with_steps(params, guess, steps_for(params, guess))
}

pub fn refine_eigenvalue_with_steps(params: &ModelParams, guess: Complex64, steps: usize) -> Result<ShootingResult> {
    let mut z0 = guess;
    let mut f0 = shoot(params, z0, steps);
    let mut z1 = guess + 1e-3 * (1.0 + guess.norm());
    if guess.im == 0.0 {
        // stay on the real axis for real seeds; F is real there
        z1.im = 0.0;
    }
    let mut f1 = shoot(params, z1, steps);

    for iteration in 1..=MAX_SECANT_ITER {
        let denom = f1 - f0;
        if denom.norm() == 0.0 {
            break;
        }
        let z2 = z1 - f1 * (z1 - z0) / denom;
        if !z2.is_finite() {
            break;
        }
        let shot = shoot_trajectory(params, z2, steps);
        let step = (z2 - z1).norm();
        z0 = z1;
        f0 = f1;
        z1 = z2;
        f1 = shot.v_end;
        if step <= 1e-14 * (1.0 + z1.norm()) || f1.norm() == 0.0 {
            let converged = f1.norm() <= BOUNDARY_TOL * shot.sup_norm;
            return if converged {
                Ok(ShootingResult {
                    lambda: z1,
                    boundary_value: f1,
                    converged,
                    iterations: iteration,
                })
            } else {
                Err(Error::NoConvergence {
                    iterations: iteration,
                    residual: f1.norm(),
                })
            };
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_SECANT_ITER,
        residual: f1.norm(),
    })
}

/// Axis-aligned rectangle in the complex `lambda` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Rect {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Self {
        assert!(re_min < re_max && im_min < im_max);
        Self {
            re_min,
            re_max,
            im_min,
            im_max,
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re > self.re_min && z.re < self.re_max && z.im > self.im_min && z.im < self.im_max
    }

    /// Distance from `z` to the rectangle boundary.
    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        let dx = if z.re < self.re_min {
            self.re_min - z.re
        } else if z.re > self.re_max {
            z.re - self.re_max
        } else {
            0.0
        };
        let dy = if z.im < self.im_min {
            self.im_min - z.im
        } else if z.im > self.im_max {
            z.im - self.im_max
        } else {
            0.0
        };
        if dx > 0.0 || dy > 0.0 {
            dx.hypot(dy)
        } else {
            (z.re - self.re_min)
                .min(self.re_max - z.re)
                .min(z.im - self.im_min)
                .min(self.im_max - z.im)
        }
    }

    /// `4 * per_side` counterclockwise samples, starting at the lower left corner.
    fn contour(&self, per_side: usize) -> Vec<Complex64> {
        let corners = [
            Complex64::new(self.re_min, self.im_min),
            Complex64::new(self.re_max, self.im_min),
            Complex64::new(self.re_max, self.im_max),
            Complex64::new(self.re_min, self.im_max),
        ];
        let mut out = Vec::with_capacity(4 * per_side + 1);
        for k in 0..4 {
            let (a, b) = (corners[k], corners[(k + 1) % 4]);
            for i in 0..per_side {
                out.push(a + (b - a) * (i as f64 / per_side as f64));
            }
        }
        out.push(corners[0]);
        out
    }
}

/// Number of eigenvalues (with multiplicity) inside `rect`, from the winding
/// number of the shooting map around the boundary.
///
/// Samples start at 256 per side and double until consecutive values turn by
/// less than `pi/2`.
pub fn count_in_rectangle(params: &ModelParams, rect: &Rect, steps: usize) -> Result<usize> {
    let mut per_side = CONTOUR_SAMPLES_PER_SIDE;
    let mut worst = 0.0_f64;
    for _ in 0..=MAX_CONTOUR_DOUBLINGS {
        let values: Vec<Complex64> = rect
            .contour(per_side)
            .into_iter()
            .map(|z| shoot(params, z, steps))
            .collect();
        let turns: Vec<f64> = values.windows(2).map(|w| (w[1] / w[0]).arg()).collect();
        worst = turns.iter().fold(0.0_f64, |m, t| m.max(t.abs()));
        if worst.is_finite() && worst < std::f64::consts::FRAC_PI_2 {
            let total: f64 = turns.iter().sum();
            let winding = (total / std::f64::consts::TAU).round();
            return Ok(winding.max(0.0) as usize);
        }
        per_side *= 2;
    }
    Err(Error::BoundaryTooClose { jump: worst })
}
