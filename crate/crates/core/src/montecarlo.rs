//! Per-realization Monte Carlo statistics.
//!
//! Each function here looks at a single sampled pattern. Realizations are
//! the independent unit: cluster processes make probe points within one
//! realization strongly correlated, so confidence intervals are built from
//! the spread between realizations ([`Estimate::from_samples`]).

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{non_negative, Error, Result};
use crate::grid::PointGrid;
use crate::process::{BooleanModel, Point, Realization, Window};

/// Normal quantile for a two-sided 95% interval.
pub const Z95: f64 = 1.96;

/// Below this many germs coverage queries scan the list directly.
pub const BRUTE_FORCE_BELOW: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
    pub ci95: (f64, f64),
    pub n_samples: u64,
}

impl Estimate {
    pub fn new(value: f64, std_error: f64, n_samples: u64) -> Self {
        Self {
            value,
            std_error,
            ci95: (value - Z95 * std_error, value + Z95 * std_error),
            n_samples,
        }
    }

    /// Sample mean with the standard error of the mean. Summation runs in
    /// slice order, so the result depends only on the values and their order.
    pub fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len();
        if n == 0 {
            return Self::new(f64::NAN, f64::NAN, 0);
        }
        let mean = samples.iter().sum::<f64>() / n as f64;
        let se = if n > 1 {
            let ss: f64 = samples.iter().map(|x| (x - mean) * (x - mean)).sum();
            libm::sqrt(ss / (n - 1) as f64 / n as f64)
        } else {
            0.0
        };
        Self::new(mean, se, n as u64)
    }

    /// Binomial proportion with the normal-approximation standard error.
    pub fn from_proportion(hits: u64, n: u64) -> Self {
        if n == 0 {
            return Self::new(f64::NAN, f64::NAN, 0);
        }
        let p = hits as f64 / n as f64;
        Self::new(p, libm::sqrt(p * (1.0 - p) / n as f64), n)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.ci95.0 <= x && x <= self.ci95.1
    }

    /// Whether `x` lies within `z` standard errors of the value.
    pub fn within(&self, x: f64, z: f64) -> bool {
        (x - self.value).abs() <= z * self.std_error
    }
}

/// Answers "is any germ within R of this point" for one realization.
pub enum CoverageIndex<'a> {
    Scan(&'a [Point]),
    Grid(PointGrid<'a>),
}

impl<'a> CoverageIndex<'a> {
    pub fn new(germs: &'a [Point], radius: f64) -> Self {
        if germs.len() < BRUTE_FORCE_BELOW {
            CoverageIndex::Scan(germs)
        } else {
            CoverageIndex::Grid(PointGrid::new(germs, radius))
        }
    }

    pub fn covers(&self, p: &Point, radius: f64) -> bool {
        match self {
            CoverageIndex::Scan(germs) => {
                let r2 = radius * radius;
                germs.iter().any(|g| g.dist_sq(p) <= r2)
            }
            CoverageIndex::Grid(grid) => grid.any_within(p, radius),
        }
    }
}

/// Dilation margin for coverage estimates: a germ farther than this outside
/// the window cannot cover any point inside it, and parents must be drawn
/// this far out so that their daughters are represented.
pub fn coverage_margin(model: &BooleanModel) -> f64 {
    model.sensing_radius + model.process.cluster_reach()
}

/// Fraction of `n_probes` uniform points in `window` covered by some germ.
pub fn covered_fraction<R: Rng + ?Sized>(
    realization: &Realization,
    radius: f64,
    window: &Window,
    n_probes: usize,
    rng: &mut R,
) -> f64 {
    let index = CoverageIndex::new(&realization.germs, radius);
    let mut hits = 0usize;
    for _ in 0..n_probes {
        let p = Point::new(window.width * rng.random::<f64>(), window.height * rng.random::<f64>());
        if index.covers(&p, radius) {
            hits += 1;
        }
    }
    hits as f64 / n_probes as f64
}

/// Checks that a window is wide enough for a sensing-probability estimate
/// centered in it: every germ that can reach the event must come from a
/// parent inside the window.
pub fn check_sensing_window(model: &BooleanModel, r_k: f64, window: &Window) -> Result<()> {
    non_negative("event radius", r_k)?;
    let need = model.sensing_radius + r_k + model.process.cluster_reach();
    let half = 0.5 * window.width.min(window.height);
    if half <= need {
        return Err(Error::Domain {
            name: "window half-width",
            value: half,
            reason: "must exceed R + r_K + cluster reach",
        });
    }
    Ok(())
}

/// Whether the disk event `B(center, r_k)` meets the coverage region: some
/// germ lies within `R + r_k` of the event center.
pub fn event_sensed(realization: &Realization, radius: f64, r_k: f64, center: &Point) -> bool {
    let reach = radius + r_k;
    let r2 = reach * reach;
    realization.germs.iter().any(|g| g.dist_sq(center) <= r2)
}

/// `Σ tau · |z - c(z)|^alpha / |window|` over germs inside the window.
pub fn power_density(realization: &Realization, window: &Window, tau: f64, alpha: f64) -> f64 {
    let half_alpha = 0.5 * alpha;
    let total: f64 = realization
        .pairs()
        .filter(|(g, _)| window.contains(g))
        .map(|(g, h)| tau * libm::pow(g.dist_sq(&h), half_alpha))
        .sum();
    total / window.area()
}

/// Per-axis offsets of every germ from its head.
pub fn head_offsets(realization: &Realization) -> Vec<(f64, f64)> {
    realization.pairs().map(|(g, h)| (g.x - h.x, g.y - h.y)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn ci_is_symmetric() {
        let e = Estimate::from_samples(&[1.0, 2.0, 3.0, 4.0]);
        assert_abs_diff_eq!(e.value, 2.5);
        // sd = sqrt(5/3), se = sd / 2
        assert_abs_diff_eq!(e.std_error, (5.0f64 / 3.0).sqrt() / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.ci95.1 - e.value, e.value - e.ci95.0, epsilon = 1e-15);
        assert!(e.contains(2.5));
    }

    #[test]
    fn proportion() {
        let e = Estimate::from_proportion(0, 100);
        assert_eq!((e.value, e.std_error), (0.0, 0.0));
        let e = Estimate::from_proportion(50, 100);
        assert_abs_diff_eq!(e.std_error, 0.05);
    }

    #[test]
    fn sensing_is_distance_test() {
        let r = Realization {
            germs: alloc::vec![Point::new(10.0, 0.0)],
            heads: alloc::vec![Point::new(0.0, 0.0)],
            parent_of: alloc::vec![0],
        };
        let o = Point::new(0.0, 0.0);
        assert!(event_sensed(&r, 5.0, 5.0, &o));
        assert!(!event_sensed(&r, 5.0, 4.9, &o));
    }

    #[test]
    fn power_counts_window_germs_only() {
        let w = Window::new(10.0, 10.0).unwrap();
        let r = Realization {
            germs: alloc::vec![Point::new(1.0, 1.0), Point::new(-1.0, 1.0)],
            heads: alloc::vec![Point::new(1.0, 3.0)],
            parent_of: alloc::vec![0, 0],
        };
        assert_abs_diff_eq!(power_density(&r, &w, 2.0, 2.0), 2.0 * 4.0 / 100.0);
        assert_eq!(power_density(&r, &w, 0.0, 2.0), 0.0);
    }

    #[test]
    fn small_window_rejected() {
        let model = BooleanModel::new(crate::ProcessSpec::Poisson { lambda_p: 1e-5, m: 3.0 }, 80.0);
        let w = Window::new(100.0, 100.0).unwrap();
        assert!(check_sensing_window(&model, 0.0, &w).is_err());
        let w = Window::new(400.0, 400.0).unwrap();
        assert!(check_sensing_window(&model, 0.0, &w).is_ok());
    }
}
