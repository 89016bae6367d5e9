use core::f64::consts::PI;

use crate::error::{non_negative, positive, Result};

fn check(d: f64, r1: f64, r2: f64) -> Result<()> {
    non_negative("distance", d)?;
    positive("radius", r1)?;
    positive("radius", r2)?;
    Ok(())
}

/// Area of `B(o, r1) ∩ B((d, 0), r2)`.
pub fn lens_area(d: f64, r1: f64, r2: f64) -> Result<f64> {
    check(d, r1, r2)?;
    Ok(lens_raw(d, r1, r2))
}

/// Inscribed-circle lower bound on [`lens_area`].
///
/// Exact in the containment regime `d <= |r1 - r2|`; in the crossing regime
/// the disk of diameter `r1 + r2 - d` centered on the overlap chord of the
/// center line lies inside both disks.
pub fn lens_area_lower_circle(d: f64, r1: f64, r2: f64) -> Result<f64> {
    check(d, r1, r2)?;
    Ok(lens_lower_circle_raw(d, r1, r2))
}

/// Bounding-rectangle upper bound on [`lens_area`], capped at the area of
/// the smaller disk.
pub fn lens_area_upper_rect(d: f64, r1: f64, r2: f64) -> Result<f64> {
    check(d, r1, r2)?;
    Ok(lens_upper_rect_raw(d, r1, r2))
}

pub(crate) fn lens_raw(d: f64, r1: f64, r2: f64) -> f64 {
    let small = r1.min(r2);
    if d >= r1 + r2 {
        return 0.0;
    }
    if d <= (r1 - r2).abs() {
        return PI * small * small;
    }
    // Order the radii so the result is bit-for-bit symmetric.
    let (a, b) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
    let kite = (-d + a + b) * (d + a - b) * (d - a + b) * (d + a + b);
    let half_chord = 0.5 * libm::sqrt(kite.max(0.0)) / d;
    // Signed distances from each center to the common chord.
    let to_chord_a = ((d - b) * (d + b) + a * a) / (2.0 * d);
    let to_chord_b = ((d - a) * (d + a) + b * b) / (2.0 * d);
    let area = segment(a, libm::atan2(half_chord, to_chord_a)) + segment(b, libm::atan2(half_chord, to_chord_b));
    area.clamp(0.0, PI * small * small)
}

// Circular segment of a disk of radius `r` cut by a chord subtending the
// half-angle `theta`: `r² (θ - sin θ cos θ)`.
fn segment(r: f64, theta: f64) -> f64 {
    let t = 2.0 * theta;
    let t_minus_sin = if t < 0.25 {
        let t2 = t * t;
        t * t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0 * (1.0 - t2 / 72.0 * (1.0 - t2 / 110.0))))
    } else {
        t - libm::sin(t)
    };
    0.5 * r * r * t_minus_sin
}

pub(crate) fn lens_lower_circle_raw(d: f64, r1: f64, r2: f64) -> f64 {
    let small = r1.min(r2);
    if d >= r1 + r2 {
        0.0
    } else if d <= (r1 - r2).abs() {
        PI * small * small
    } else {
        let rho = 0.5 * (r1 + r2 - d);
        PI * rho * rho
    }
}

pub(crate) fn lens_upper_rect_raw(d: f64, r1: f64, r2: f64) -> f64 {
    let small = r1.min(r2);
    if d >= r1 + r2 {
        0.0
    } else {
        ((r1 + r2 - d) * 2.0 * small).min(PI * small * small)
    }
}
