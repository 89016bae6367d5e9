//! Planar geometry, special functions and quadrature shared by the analytic
//! and Monte Carlo paths.

mod gaussian;
mod geometry;
mod quadrature;
pub mod special;

pub use gaussian::gaussian_disk_mass;
pub use geometry::{lens_area, lens_area_lower_circle, lens_area_upper_rect};
pub use quadrature::{integrate_adaptive, integrate_semi_infinite, integrate_semi_infinite_from};

pub(crate) use gaussian::disk_mass_raw;
pub(crate) use geometry::{lens_lower_circle_raw, lens_raw, lens_upper_rect_raw};

use crate::error::{Error, Result};

/// Tolerances and limits for every numeric integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    /// Relative tolerance on the integral.
    pub rel_tol: f64,
    /// Absolute tolerance on the integral.
    pub abs_tol: f64,
    /// Maximum number of interval bisections per adaptive integral.
    pub max_subdivisions: usize,
    /// A semi-infinite integral stops growing once the newest panel adds less
    /// than this fraction of the running total.
    pub tail_cutoff: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            max_subdivisions: 2000,
            tail_cutoff: 1e-10,
        }
    }
}

impl QuadratureSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::domain("rel_tol", self.rel_tol, "must be > 0"));
        }
        if !(self.abs_tol >= 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::domain("abs_tol", self.abs_tol, "must be >= 0"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::domain("max_subdivisions", 0.0, "must be >= 1"));
        }
        if !(self.tail_cutoff > 0.0 && self.tail_cutoff < 1.0) {
            return Err(Error::domain("tail_cutoff", self.tail_cutoff, "must lie in (0, 1)"));
        }
        Ok(())
    }

    /// Same limits with both tolerances scaled by `factor`.
    pub fn tightened(&self, factor: f64) -> Self {
        Self {
            rel_tol: self.rel_tol * factor,
            abs_tol: self.abs_tol * factor,
            ..*self
        }
    }
}
