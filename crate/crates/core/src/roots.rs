//! Scalar root-finding helpers shared by the spectral and oracle modules.

use num_complex::Complex64;

/// Bisection on a bracket with a strict sign change, run until the midpoint
/// can no longer be separated from an endpoint.
///
/// Returns `None` when `f(lo)` and `f(hi)` have the same sign.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64) -> Option<f64>
where
    F: Fn(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Some(lo);
    }
    if f_hi == 0.0 {
        return Some(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Some(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    // pick whichever endpoint has the smaller residual
    if f(lo).abs() <= f(hi).abs() {
        Some(lo)
    } else {
        Some(hi)
    }
}

/// Square root with `sqrt(0) = 0` and `-pi/2 < arg <= pi/2`.
///
/// `Complex64::sqrt` returns `-i sqrt(a)` for `-a - 0i`; this branch
/// always maps the negative real axis to the positive imaginary axis.
pub fn sqrt_branch(z: Complex64) -> Complex64 {
    if z.re == 0.0 && z.im == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let w = z.sqrt();
    if w.re == 0.0 && w.im < 0.0 {
        -w
    } else {
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn bisection_finds_cosine_zero() {
        let r = bisect(f64::cos, 0.0, 3.0).unwrap();
        assert!((r - PI / 2.0).abs() < 1e-15);
        assert!(bisect(f64::cos, 0.0, 1.0).is_none());
    }

    #[test]
    fn sqrt_branch_cut() {
        let w = sqrt_branch(Complex64::new(-4.0, -0.0));
        assert_eq!(w, Complex64::new(0.0, 2.0));
        let w = sqrt_branch(Complex64::new(-4.0, 0.0));
        assert_eq!(w, Complex64::new(0.0, 2.0));
        assert_eq!(sqrt_branch(Complex64::new(0.0, 0.0)), Complex64::new(0.0, 0.0));
        let z = Complex64::new(-3.0, -1e-3);
        let w = sqrt_branch(z);
        assert!(w.re > 0.0 && w.im < 0.0);
        assert!((w * w - z).norm() < 1e-14);
    }
}
