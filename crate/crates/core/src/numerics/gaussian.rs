use super::quadrature::integrate_adaptive;
use super::special::bessel_i0e;
use super::QuadratureSettings;
use crate::error::{non_negative, positive, Result};

/// Probability mass that an isotropic Gaussian with per-axis standard
/// deviation `sigma`, centered at the origin, puts on the disk of radius `r`
/// centered at distance `x`.
///
/// Evaluated as the radial integral
/// `∫₀^r (t/σ²) exp(-(x-t)²/2σ²) I0e(xt/σ²) dt`, with the Bessel factor
/// exponentially scaled so nothing overflows for `x·r ≫ σ²`. Equal to
/// `1 - Q1(x/σ, r/σ)` in Marcum-Q notation.
pub fn gaussian_disk_mass(x: f64, r: f64, sigma: f64, q: &QuadratureSettings) -> Result<f64> {
    non_negative("offset", x)?;
    non_negative("radius", r)?;
    positive("sigma", sigma)?;
    disk_mass_raw(x / sigma, r / sigma, q)
}

// Beyond this many standard deviations from the offset the integrand is
// below exp(-800) and underflows.
const SUPPORT: f64 = 40.0;

/// Disk mass in units of sigma: offset `a`, radius `b`.
pub(crate) fn disk_mass_raw(a: f64, b: f64, q: &QuadratureSettings) -> Result<f64> {
    if b == 0.0 {
        return Ok(0.0);
    }
    if a == 0.0 {
        return Ok(-libm::expm1(-0.5 * b * b));
    }
    let lo = (a - SUPPORT).max(0.0);
    let hi = (a + SUPPORT).min(b);
    if lo >= hi {
        return Ok(0.0);
    }
    let integrand = |u: f64| {
        let d = a - u;
        u * libm::exp(-0.5 * d * d) * bessel_i0e(a * u)
    };
    // Split at the peak when it lies inside the range.
    let mass = if a > lo && a < hi {
        integrate_adaptive(integrand, lo, a, q)? + integrate_adaptive(integrand, a, hi, q)?
    } else {
        integrate_adaptive(integrand, lo, hi, q)?
    };
    Ok(mass.clamp(0.0, 1.0))
}
