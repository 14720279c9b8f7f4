//! Roots of the characteristic equations `sin(nu) = +/- S nu` and the
//! eigenvalues they generate.
//!
//! Every nonzero root `nu` of `sin(nu) = S nu` gives the symmetric eigenvalue
//! `lambda = -1 - cos(nu)`, every nonzero root of `sin(nu) = -S nu` the
//! antisymmetric eigenvalue `lambda = -1 + cos(nu)`. Roots are indexed by
//! `(n, j)`: `n` even is symmetric, `n` odd antisymmetric, and for `n >= 1`
//! the pair `j = 1, 2` lives in `(n pi, (n+1) pi)` while real, or in the strip
//! `Q_n = { n pi < Re z < (n + 1/2) pi, Im z > 0 }` and its mirror image once
//! the pair has collided at the critical speed `S_n` and left the real axis.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{ModelParams, Parity};
use crate::roots::{bisect, sqrt_branch};

/// Residual tolerance of a returned root, scaled by `1 + |nu|`.
pub const RESIDUAL_TOL: f64 = 1e-12;
/// `|S - S_n|` below which the pair is reported as the double root.
pub const DOUBLE_ROOT_TOL: f64 = 1e-12;
/// `|S - S_n|` below which the local quadratic model replaces bisection/Newton.
pub const NEAR_DOUBLE_WINDOW: f64 = 1e-6;
/// How far Newton iterates may wander outside the closed strip.
pub const STRIP_MARGIN: f64 = 0.1;
pub const NEWTON_MAX_ITER: usize = 100;
/// Tolerance for the `-1 - sqrt(1 - S^2 nu^2)` cross-check of non-real eigenvalues.
pub const SQRT_FORM_TOL: f64 = 1e-9;

const S_ONE_TOL: f64 = 1e-12;

fn bracket_inset(n: usize) -> f64 {
    1e-9 * (n as f64 + 1.0) * PI
}

/// One nonzero solution of a characteristic equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuRoot {
    pub n: usize,
    /// `None` for `n = 0`.
    pub j: Option<u8>,
    pub value: Complex64,
    pub parity: Parity,
    pub is_real: bool,
    /// Speed the root was computed for.
    pub s: f64,
}

impl NuRoot {
    /// `|sin(nu) -/+ S nu|`.
    pub fn residual(&self) -> f64 {
        characteristic(self.parity, self.s, self.value).norm()
    }

    pub fn within_tolerance(&self) -> bool {
        self.residual() <= RESIDUAL_TOL * (1.0 + self.value.norm())
    }

    /// Strict membership of the root (or its conjugate for `j = 2`) in `Q_n`.
    pub fn in_strip(&self) -> bool {
        let z = match self.j {
            Some(2) => self.value.conj(),
            _ => self.value,
        };
        let n = self.n as f64;
        z.re > n * PI && z.re < (n + 0.5) * PI && z.im > 0.0
    }
}

/// The generator of an eigenvalue: an ordinary root, or the `nu = 0` triple
/// collision that carries the eigenvalue `-2` at `S = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Nu {
    Root(NuRoot),
    DoubleRootAtSOne,
}

impl Nu {
    pub fn value(&self) -> Complex64 {
        match self {
            Nu::Root(r) => r.value,
            Nu::DoubleRootAtSOne => Complex64::new(0.0, 0.0),
        }
    }

    pub fn root(&self) -> Option<&NuRoot> {
        match self {
            Nu::Root(r) => Some(r),
            Nu::DoubleRootAtSOne => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub lambda: Complex64,
    pub nu: Nu,
    pub parity: Parity,
    pub n: usize,
    pub j: Option<u8>,
    /// `|lambda - (-1 - sqrt(1 - S^2 nu^2))|`, the distance to the square-root
    /// form of the eigenvalue. Only expected to vanish for non-real pairs and
    /// double roots with `n >= 1`.
    pub sqrt_form_gap: f64,
}

impl EigenPair {
    pub fn is_real(&self) -> bool {
        match self.nu {
            Nu::DoubleRootAtSOne => true,
            Nu::Root(r) => r.n == 0 || r.is_real,
        }
    }

    /// Whether the square-root form must agree with the cosine form.
    pub fn sqrt_form_applies(&self) -> bool {
        match self.nu {
            Nu::Root(r) if r.n >= 1 => !r.is_real || r.value.im == 0.0 && is_double_root(&r),
            _ => false,
        }
    }
}

fn is_double_root(root: &NuRoot) -> bool {
    let crit = critical_s(root.n);
    (root.s - crit.s_m).abs() <= DOUBLE_ROOT_TOL
}

/// Speed at which the `m`-th pair of real roots collides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalS {
    pub m: usize,
    /// The double root: the solution of `tan x = x` in `(m pi, (m + 1/2) pi)`.
    pub nu_m: f64,
    pub s_m: f64,
}

/// `sin(z) - sign * S z` for the parity's characteristic equation.
#[inline]
pub fn characteristic(parity: Parity, s: f64, z: Complex64) -> Complex64 {
    z.sin() - parity.sign() * s * z
}

#[inline]
fn characteristic_derivative(parity: Parity, s: f64, z: Complex64) -> Complex64 {
    z.cos() - parity.sign() * s
}

/// The double root `nu_m` and critical speed `S_m = |cos(nu_m)|`.
///
/// `m = 1` gives the speed above which every root with `n >= 1` is non-real.
pub fn critical_s(m: usize) -> CriticalS {
    assert!(m >= 1, "critical speeds are indexed from 1");
    let f = |x: f64| x.tan() - x;
    let mut delta = bracket_inset(m);
    let nu_m = loop {
        let lo = m as f64 * PI + delta;
        let hi = (m as f64 + 0.5) * PI - delta;
        if let Some(root) = bisect(f, lo, hi) {
            break root;
        }
        delta *= 0.1;
    };
    CriticalS {
        m,
        nu_m,
        s_m: nu_m.cos().abs(),
    }
}

/// The root generating the dominant eigenvalue.
///
/// Real in `(0, pi)` for `S < 1`, the `S = 1` marker, and `i y0` with
/// `sinh y0 = S y0` for `S > 1`.
pub fn nu_zero(params: &ModelParams) -> Nu {
    let s = params.s();
    if (s - 1.0).abs() <= S_ONE_TOL {
        return Nu::DoubleRootAtSOne;
    }
    let value = if s < 1.0 {
        let f = |x: f64| x.sin() - s * x;
        let mut delta = bracket_inset(0);
        while f(delta) <= 0.0 {
            delta *= 0.1;
        }
        let x = bisect(f, delta, PI).expect("sin x - S x changes sign on (0, pi)");
        Complex64::new(x, 0.0)
    } else {
        let g = |y: f64| y.sinh() - s * y;
        let mut delta = bracket_inset(0);
        while g(delta) >= 0.0 {
            delta *= 0.1;
        }
        let mut hi = 2.0 * (2.0 * s).ln() + 2.0;
        while g(hi) <= 0.0 {
            hi *= 2.0;
        }
        let y = bisect(g, delta, hi).expect("sinh y - S y changes sign");
        Complex64::new(0.0, y)
    };
    Nu::Root(NuRoot {
        n: 0,
        j: None,
        value,
        parity: Parity::Symmetric,
        is_real: s < 1.0,
        s,
    })
}

/// The root `nu_{n,j}` for `n >= 1`, `j` in `{1, 2}`.
///
/// Real pairs are ordered `nu_{n,1} < nu_{n,2}`; non-real pairs satisfy
/// `Im nu_{n,1} > 0` and `nu_{n,2} = conj(nu_{n,1})`.
pub fn nu_root(params: &ModelParams, n: usize, j: u8) -> Result<NuRoot> {
    if n == 0 {
        return Err(Error::InvalidParameter("nu_root needs n >= 1; use nu_zero".into()));
    }
    if j != 1 && j != 2 {
        return Err(Error::InvalidParameter(format!("j must be 1 or 2, got {j}")));
    }
    let s = params.s();
    let parity = Parity::of_index(n);
    let crit = critical_s(n);
    let offset = s - crit.s_m;

    let (value, is_real) = if offset.abs() <= DOUBLE_ROOT_TOL {
        (Complex64::new(crit.nu_m, 0.0), true)
    } else if offset.abs() < NEAR_DOUBLE_WINDOW {
        near_double_root(parity, s, n, j, crit.nu_m)?
    } else if offset < 0.0 {
        (Complex64::new(real_root(parity, s, n, j, crit.nu_m), 0.0), true)
    } else {
        let upper = complex_root(parity, s, n, crit)?;
        let value = if j == 1 { upper } else { upper.conj() };
        (value, false)
    };

    let root = NuRoot {
        n,
        j: Some(j),
        value,
        parity,
        is_real,
        s,
    };
    if !root.within_tolerance() {
        return Err(Error::ConvergenceFailure {
            n,
            j,
            residual: root.residual(),
        });
    }
    Ok(root)
}

fn real_root(parity: Parity, s: f64, n: usize, j: u8, e_n: f64) -> f64 {
    let f = |x: f64| x.sin() - parity.sign() * s * x;
    let delta = bracket_inset(n);
    let (lo, hi) = if j == 1 {
        (n as f64 * PI + delta, e_n)
    } else {
        (e_n, (n as f64 + 1.0) * PI - delta)
    };
    bisect(f, lo, hi).expect("S < S_n brackets a root on each side of e_n")
}

/// Quadratic model of the characteristic function around `e_n`, polished
/// by Newton. Valid while `|S - S_n|` is small enough that the cubic term is
/// negligible against the root separation.
fn near_double_root(parity: Parity, s: f64, n: usize, j: u8, e_n: f64) -> Result<(Complex64, bool)> {
    let e = Complex64::new(e_n, 0.0);
    let h0 = characteristic(parity, s, e);
    let h1 = characteristic_derivative(parity, s, e);
    let h2 = -e.sin();
    let disc = h1 * h1 - 2.0 * h0 * h2;
    let is_real = disc.re > 0.0;
    let sq = if is_real {
        Complex64::new(disc.re.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-disc.re).sqrt())
    };
    let a = (-h1 + sq) / h2;
    let b = (-h1 - sq) / h2;
    let seed = if is_real {
        let (lo, hi) = if a.re < b.re { (a, b) } else { (b, a) };
        e + if j == 1 { lo.re } else { hi.re }
    } else {
        let up = if a.im > 0.0 { a } else { b };
        e + if j == 1 { up } else { up.conj() }
    };
    let mut z = if is_real { Complex64::new(seed.re, 0.0) } else { seed };
    for _ in 0..NEWTON_MAX_ITER {
        let step = characteristic(parity, s, z) / characteristic_derivative(parity, s, z);
        if !step.is_finite() {
            break;
        }
        z -= step;
        if is_real {
            z.im = 0.0;
        }
        if step.norm() <= 4.0 * f64::EPSILON * z.norm() {
            break;
        }
    }
    if is_real && (j == 1 && z.re >= e_n || j == 2 && z.re <= e_n) {
        return Err(Error::ConvergenceFailure {
            n,
            j,
            residual: characteristic(parity, s, z).norm(),
        });
    }
    Ok((z, is_real))
}

/// Root in `Q_n` for `S > S_n`: damped Newton from the best available seed,
/// with a continuation in `S` from a large-speed root as fallback.
fn complex_root(parity: Parity, s: f64, n: usize, crit: CriticalS) -> Result<Complex64> {
    let seed = if s - crit.s_m < 0.05 * crit.s_m {
        quadratic_seed(parity, s, crit.nu_m)
    } else {
        asymptotic_nu_upper(s, n)
    };
    if let Some(z) = strip_newton(parity, s, n, seed) {
        return Ok(z);
    }
    continuation(parity, s, n).ok_or(Error::ConvergenceFailure {
        n,
        j: 1,
        residual: f64::NAN,
    })
}

fn quadratic_seed(parity: Parity, s: f64, e_n: f64) -> Complex64 {
    let e = Complex64::new(e_n, 0.0);
    let h0 = characteristic(parity, s, e);
    let h1 = characteristic_derivative(parity, s, e);
    let h2 = -e.sin();
    let sq = (h1 * h1 - 2.0 * h0 * h2).sqrt();
    let a = (-h1 + sq) / h2;
    let b = (-h1 - sq) / h2;
    let up = if a.im >= b.im { a } else { b };
    let mut z = e + up;
    // keep the seed off the real axis so Newton can leave it
    z.im = z.im.max(1e-3);
    z
}

fn asymptotic_nu_upper(s: f64, n: usize) -> Complex64 {
    let a = (n as f64 + 0.5) * PI;
    Complex64::new(a, (2.0 * s * a).ln().max(0.1))
}

fn inside_inflated_strip(z: Complex64, n: usize) -> bool {
    let n = n as f64;
    z.re >= n * PI - STRIP_MARGIN && z.re <= (n + 0.5) * PI + STRIP_MARGIN && z.im >= -STRIP_MARGIN
}

fn strictly_in_strip(z: Complex64, n: usize) -> bool {
    let n = n as f64;
    z.re > n * PI && z.re < (n + 0.5) * PI && z.im > 0.0
}

/// Newton on `sin z -/+ S z` with step halving whenever the iterate would
/// leave the inflated strip. Returns the root only if it converged strictly
/// inside `Q_n`.
fn strip_newton(parity: Parity, s: f64, n: usize, seed: Complex64) -> Option<Complex64> {
    let mut z = seed;
    let mut converged = false;
    for _ in 0..NEWTON_MAX_ITER {
        let h = characteristic(parity, s, z);
        let dh = characteristic_derivative(parity, s, z);
        let mut step = h / dh;
        if !step.is_finite() {
            return None;
        }
        let mut halvings = 0;
        while !inside_inflated_strip(z - step, n) {
            step *= 0.5;
            halvings += 1;
            if halvings > 60 {
                return None;
            }
        }
        z -= step;
        if step.norm() <= 4.0 * f64::EPSILON * z.norm() {
            converged = true;
            break;
        }
    }
    // a couple of polishing steps once the iteration has stalled at rounding level
    for _ in 0..2 {
        let step = characteristic(parity, s, z) / characteristic_derivative(parity, s, z);
        if step.is_finite() && inside_inflated_strip(z - step, n) {
            z -= step;
        }
    }
    let residual = characteristic(parity, s, z).norm();
    let ok = residual <= RESIDUAL_TOL * (1.0 + z.norm());
    if (converged || ok) && ok && strictly_in_strip(z, n) {
        Some(z)
    } else {
        None
    }
}

/// Follow the root from a large speed, where the asymptotic seed is
/// reliable, down to the requested speed.
fn continuation(parity: Parity, s: f64, n: usize) -> Option<Complex64> {
    let mut current_s = (4.0 * s).max(4.0);
    let mut z = strip_newton(parity, current_s, n, asymptotic_nu_upper(current_s, n))?;
    let mut factor: f64 = 0.8;
    while current_s > s {
        let next_s = (current_s * factor).max(s);
        match strip_newton(parity, next_s, n, z) {
            Some(next) => {
                z = next;
                current_s = next_s;
                factor = (factor * factor).max(0.8);
            }
            None => {
                factor = factor.sqrt();
                if 1.0 - factor < 1e-10 {
                    return None;
                }
            }
        }
    }
    Some(z)
}

/// Eigenvalue generated by a root, with the square-root form recorded as a
/// diagnostic.
pub fn lambda_from_nu(nu: &Nu) -> EigenPair {
    match nu {
        Nu::DoubleRootAtSOne => EigenPair {
            lambda: Complex64::new(-2.0, 0.0),
            nu: *nu,
            parity: Parity::Symmetric,
            n: 0,
            j: None,
            sqrt_form_gap: 0.0,
        },
        Nu::Root(root) => {
            let c = root.value.cos();
            let mut lambda = Complex64::new(-1.0, 0.0) - root.parity.sign() * c;
            if root.is_real || root.n == 0 {
                lambda.im = 0.0;
            }
            let s_nu = root.s * root.value;
            let sqrt_form = Complex64::new(-1.0, 0.0) - sqrt_branch(Complex64::new(1.0, 0.0) - s_nu * s_nu);
            EigenPair {
                lambda,
                nu: *nu,
                parity: root.parity,
                n: root.n,
                j: root.j,
                sqrt_form_gap: (lambda - sqrt_form).norm(),
            }
        }
    }
}

/// The dominant eigenpair `lambda_0(S)`.
pub fn dominant(params: &ModelParams) -> EigenPair {
    lambda_from_nu(&nu_zero(params))
}

/// `lambda_0` followed by `lambda_{n,j}` for `1 <= n <= n_max`, ordered by
/// `n` then `j`.
pub fn spectrum_slice(params: &ModelParams, n_max: usize) -> Result<Vec<EigenPair>> {
    let mut out = Vec::with_capacity(1 + 2 * n_max);
    out.push(dominant(params));
    for n in 1..=n_max {
        let first = nu_root(params, n, 1)?;
        let second = if first.is_real {
            nu_root(params, n, 2)?
        } else {
            NuRoot {
                j: Some(2),
                value: first.value.conj(),
                ..first
            }
        };
        let a = lambda_from_nu(&Nu::Root(first));
        let mut b = lambda_from_nu(&Nu::Root(second));
        if !first.is_real {
            b.lambda = a.lambda.conj();
        }
        out.push(a);
        out.push(b);
    }
    Ok(out)
}

/// Leading-order large-`n` approximation of `nu_{n,j}`.
pub fn asymptotic_nu(params: &ModelParams, n: usize, j: u8) -> Complex64 {
    let a = (n as f64 + 0.5) * PI;
    let im = (2.0 * params.s() * a).ln();
    Complex64::new(a, if j == 1 { im } else { -im })
}

/// Leading-order large-`n` approximation of `lambda_{n,j}`.
pub fn asymptotic_lambda(params: &ModelParams, n: usize, j: u8) -> Complex64 {
    let s = params.s();
    let a = (n as f64 + 0.5) * PI;
    let im = s * a;
    Complex64::new(-1.0 - s * (2.0 * s * a).ln(), if j == 1 { im } else { -im })
}

/// `S = 2/pi`, where `nu_0 = pi/2` and `lambda_0 = -1`.
pub const S_UNIT_DECAY: f64 = 1.0 / FRAC_PI_2;

#[cfg(test)]
mod tests {
    use super::*;

    fn params(s: f64) -> ModelParams {
        ModelParams::new(s).unwrap()
    }

    // Independent bisection oracle for tan x = x, written against the raw
    // formula rather than `critical_s`.
    fn tan_oracle(m: usize) -> f64 {
        let (mut lo, mut hi) = (m as f64 * PI + 1e-6, (m as f64 + 0.5) * PI - 1e-6);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid.tan() - mid < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn first_critical_speed() {
        let c = critical_s(1);
        assert!((c.s_m - 0.2172).abs() < 5e-4);
        let oracle = tan_oracle(1);
        assert!((c.s_m - oracle.cos().abs()).abs() < 1e-10);
        assert!(c.nu_m > PI && c.nu_m < 1.5 * PI);
        assert!((c.nu_m.tan() - c.nu_m).abs() < 1e-12);
    }

    #[test]
    fn critical_speeds_decrease() {
        let mut prev = f64::INFINITY;
        for m in 1..=40 {
            let c = critical_s(m);
            assert!(c.s_m < prev, "S_{m} not below S_{}", m - 1);
            assert!(c.s_m > 0.0 && c.s_m < 1.0);
            assert!(c.nu_m > m as f64 * PI && c.nu_m < (m as f64 + 0.5) * PI);
            // tan x - x is ill-conditioned near the pole; compare the cos-scaled form
            let scaled = c.nu_m.sin() - c.nu_m * c.nu_m.cos();
            assert!(scaled.abs() < 1e-12 * c.nu_m, "m={m}: {scaled:e}");
            prev = c.s_m;
        }
    }

    #[test]
    fn nu_zero_special_values() {
        match nu_zero(&params(S_UNIT_DECAY)) {
            Nu::Root(r) => {
                assert!((r.value.re - FRAC_PI_2).abs() < 1e-14);
                assert_eq!(r.value.im, 0.0);
                assert!(r.is_real);
            }
            Nu::DoubleRootAtSOne => panic!("unexpected marker"),
        }
        assert_eq!(nu_zero(&params(1.0)), Nu::DoubleRootAtSOne);
    }

    #[test]
    fn nu_zero_half_speed() {
        let r = *nu_zero(&params(0.5)).root().unwrap();
        let x = r.value.re;
        assert!(x > 0.0 && x < PI);
        assert!((x.sin() - 0.5 * x).abs() < 1e-12);
    }

    #[test]
    fn nu_zero_above_one_is_imaginary() {
        for s in [1.0 + 1e-9, 1.01, 2.0, 7.5, 100.0] {
            let r = *nu_zero(&params(s)).root().unwrap();
            assert_eq!(r.value.re, 0.0);
            let y = r.value.im;
            assert!(y > 0.0);
            assert!((y.sinh() - s * y).abs() < 1e-12 * (1.0 + y), "S={s}");
        }
    }

    #[test]
    fn nu_zero_just_below_one() {
        let s = 1.0 - 1e-10;
        let r = *nu_zero(&params(s)).root().unwrap();
        assert!(r.value.re > 0.0 && r.value.re < 1e-3);
        assert!(r.within_tolerance());
    }

    #[test]
    fn dominant_golden_values() {
        assert!((dominant(&params(1.0)).lambda - Complex64::new(-2.0, 0.0)).norm() < 1e-10);
        assert!((dominant(&params(S_UNIT_DECAY)).lambda - Complex64::new(-1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn dominant_above_one_matches_cosh_formula() {
        // oracle: bisection on sinh y = 2 y, independent of nu_zero's bracketing
        let (mut lo, mut hi) = (1.0_f64, 4.0_f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid.sinh() - 2.0 * mid < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let expected = -1.0 - (0.5 * (lo + hi)).cosh();
        let got = dominant(&params(2.0)).lambda;
        assert!((got.re - expected).abs() < 1e-12);
        assert_eq!(got.im, 0.0);
    }

    #[test]
    fn real_pair_small_speed() {
        let p = params(0.05);
        let a = nu_root(&p, 1, 1).unwrap();
        let b = nu_root(&p, 1, 2).unwrap();
        assert!(a.is_real && b.is_real);
        assert!(a.value.re > PI && a.value.re < b.value.re && b.value.re < 2.0 * PI);
        assert!(a.within_tolerance() && b.within_tolerance());
    }

    #[test]
    fn complex_pair_above_critical() {
        let p = params(0.8);
        let a = nu_root(&p, 1, 1).unwrap();
        let b = nu_root(&p, 1, 2).unwrap();
        assert!(!a.is_real);
        assert!(a.in_strip() && b.in_strip());
        assert_eq!(b.value, a.value.conj());
    }

    #[test]
    fn large_index_near_asymptotic() {
        let p = params(0.8);
        let r = nu_root(&p, 50, 1).unwrap();
        let guess = asymptotic_nu(&p, 50, 1);
        assert!((r.value - guess).norm() < 0.05);
        let far = nu_root(&p, 200, 1).unwrap();
        assert!((far.value - asymptotic_nu(&p, 200, 1)).norm() < (r.value - guess).norm());
    }

    #[test]
    fn asymptotic_formulas() {
        let p = params(0.8);
        let z = asymptotic_nu(&p, 50, 1);
        assert_eq!(z.re, 50.5 * PI);
        assert!((z.im - (80.8 * PI).ln()).abs() < 1e-14);
        assert_eq!(asymptotic_nu(&p, 50, 2), z.conj());
        let l = asymptotic_lambda(&p, 50, 2);
        assert!((l.re - (-1.0 - 0.8 * (80.8 * PI).ln())).abs() < 1e-14);
        assert!((l.im + 0.8 * 50.5 * PI).abs() < 1e-12);
        assert_eq!(asymptotic_lambda(&p, 50, 1), l.conj());
    }

    #[test]
    fn double_root_at_critical_speed() {
        let c = critical_s(2);
        let p = params(c.s_m);
        let a = nu_root(&p, 2, 1).unwrap();
        let b = nu_root(&p, 2, 2).unwrap();
        assert!(a.is_real && b.is_real);
        assert_eq!(a.value, b.value);
        assert!(a.value.re > 2.0 * PI && a.value.re < 2.5 * PI);
        let pair = lambda_from_nu(&Nu::Root(a));
        assert!(pair.sqrt_form_applies());
        assert!(pair.sqrt_form_gap < SQRT_FORM_TOL);
    }

    #[test]
    fn near_double_root_both_sides() {
        let c = critical_s(1);
        for delta in [-5e-7, -1e-9, 1e-9, 5e-7, 2e-6, -2e-6] {
            let p = params(c.s_m + delta);
            let a = nu_root(&p, 1, 1).unwrap();
            let b = nu_root(&p, 1, 2).unwrap();
            assert!(a.within_tolerance() && b.within_tolerance(), "delta={delta}");
            if delta < 0.0 {
                assert!(a.is_real && b.is_real);
                assert!(a.value.re < c.nu_m && c.nu_m < b.value.re);
            } else {
                assert!(!a.is_real && a.in_strip(), "delta={delta}: {:?}", a.value);
                assert!((b.value - a.value.conj()).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn eigenvalue_special_cases() {
        let pair = lambda_from_nu(&Nu::DoubleRootAtSOne);
        assert_eq!(pair.lambda, Complex64::new(-2.0, 0.0));
        let pair = dominant(&params(S_UNIT_DECAY));
        assert!((pair.lambda.re + 1.0).abs() < 1e-14);
    }

    #[test]
    fn slice_structure() {
        let only = spectrum_slice(&params(1.0), 0).unwrap();
        assert_eq!(only.len(), 1);
        assert_eq!(only[0].lambda, Complex64::new(-2.0, 0.0));

        let slice = spectrum_slice(&params(0.8), 3).unwrap();
        assert_eq!(slice.len(), 7);
        let l0 = slice[0].lambda.re;
        for pair in &slice[1..] {
            assert!(pair.lambda.re < l0);
        }
        for k in (1..slice.len()).step_by(2) {
            assert_eq!(slice[k + 1].lambda, slice[k].lambda.conj());
            assert!(slice[k].lambda.im > 0.0);
            assert!(slice[k].sqrt_form_gap < SQRT_FORM_TOL);
        }
    }

    #[test]
    fn nonreal_bound() {
        for s in [0.25, 0.5, 1.0, 2.0] {
            let p = params(s);
            for pair in spectrum_slice(&p, 2).unwrap().iter().skip(1) {
                if !pair.is_real() {
                    assert!(pair.lambda.re < -1.0 - s);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_indices() {
        let p = params(0.5);
        assert!(nu_root(&p, 0, 1).is_err());
        assert!(nu_root(&p, 1, 3).is_err());
    }
}
