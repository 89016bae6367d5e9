//! Point-process specifications and seeded samplers.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};

use crate::error::{non_negative, positive, Error, Result};
use crate::grid::PointGrid;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist_sq(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn dist(&self, other: &Point) -> f64 {
        libm::sqrt(self.dist_sq(other))
    }
}

/// Sensor deployment process.
///
/// `lambda_p` is always the cluster-head density (per m²) and `m` the mean
/// number of sensors per head, so the sensor density is `lambda_p * m` for
/// every kind. For the Poisson kind the heads are an independent process
/// used only to assign each sensor to its nearest head.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProcessSpec {
    Poisson { lambda_p: f64, m: f64 },
    Matern { lambda_p: f64, m: f64, r_d: f64 },
    Thomas { lambda_p: f64, m: f64, sigma: f64 },
}

/// Thomas daughters farther than this many standard deviations from their
/// parent are ignored when sizing edge margins.
pub const THOMAS_REACH_SIGMAS: f64 = 6.0;

impl ProcessSpec {
    pub fn validate(&self) -> Result<()> {
        non_negative("lambda_p", self.lambda_p())?;
        non_negative("m", self.mean_cluster_size())?;
        match *self {
            ProcessSpec::Poisson { .. } => {}
            ProcessSpec::Matern { r_d, .. } => {
                positive("r_d", r_d)?;
            }
            ProcessSpec::Thomas { sigma, .. } => {
                positive("sigma", sigma)?;
            }
        }
        Ok(())
    }

    pub fn lambda_p(&self) -> f64 {
        match *self {
            ProcessSpec::Poisson { lambda_p, .. }
            | ProcessSpec::Matern { lambda_p, .. }
            | ProcessSpec::Thomas { lambda_p, .. } => lambda_p,
        }
    }

    pub fn mean_cluster_size(&self) -> f64 {
        match *self {
            ProcessSpec::Poisson { m, .. } | ProcessSpec::Matern { m, .. } | ProcessSpec::Thomas { m, .. } => m,
        }
    }

    /// Sensor density `lambda_p * m`.
    pub fn total_density(&self) -> f64 {
        self.lambda_p() * self.mean_cluster_size()
    }

    /// Daughter density `m / (π r_d²)` on the cluster disk (Matérn only).
    pub fn daughter_density(&self) -> Option<f64> {
        match *self {
            ProcessSpec::Matern { m, r_d, .. } => Some(m / (PI * r_d * r_d)),
            _ => None,
        }
    }

    /// How far a sensor can sit from its parent for margin purposes: `r_d`
    /// for Matérn, six sigma for Thomas, zero for Poisson.
    pub fn cluster_reach(&self) -> f64 {
        match *self {
            ProcessSpec::Poisson { .. } => 0.0,
            ProcessSpec::Matern { r_d, .. } => r_d,
            ProcessSpec::Thomas { sigma, .. } => THOMAS_REACH_SIGMAS * sigma,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ProcessSpec::Poisson { .. } => "ppp",
            ProcessSpec::Matern { .. } => "mcp",
            ProcessSpec::Thomas { .. } => "tcp",
        }
    }
}

/// A deployment process with disk grains of radius `sensing_radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BooleanModel {
    pub process: ProcessSpec,
    pub sensing_radius: f64,
}

impl BooleanModel {
    pub fn new(process: ProcessSpec, sensing_radius: f64) -> Self {
        Self {
            process,
            sensing_radius,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.process.validate()?;
        positive("sensing radius", self.sensing_radius)?;
        Ok(())
    }
}

/// Observation window `[0, width] × [0, height]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub width: f64,
    pub height: f64,
}

impl Window {
    pub fn new(width: f64, height: f64) -> Result<Self> {
        positive("window width", width)?;
        positive("window height", height)?;
        Ok(Self { width, height })
    }

    pub fn area(&self) -> f64 {
        self.width * self.height
    }

    pub fn center(&self) -> Point {
        Point::new(0.5 * self.width, 0.5 * self.height)
    }

    pub fn contains(&self, p: &Point) -> bool {
        (0.0..=self.width).contains(&p.x) && (0.0..=self.height).contains(&p.y)
    }

    pub(crate) fn dilated(&self, margin: f64) -> Rect {
        Rect {
            x0: -margin,
            y0: -margin,
            x1: self.width + margin,
            y1: self.height + margin,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub fn area(&self) -> f64 {
        (self.x1 - self.x0) * (self.y1 - self.y0)
    }

    fn uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        Point::new(
            self.x0 + (self.x1 - self.x0) * rng.random::<f64>(),
            self.y0 + (self.y1 - self.y0) * rng.random::<f64>(),
        )
    }
}

/// Master seed for a simulation.
///
/// Per-realization seeds come from [`Seed::derive`], which mixes the
/// realization index into the master value with the SplitMix64 finalizer:
/// `derive(i) = splitmix64(value + (i + 1) * 0x9E3779B97F4A7C15)`. Each
/// seed then feeds a ChaCha8 generator whose independent streams separate
/// the point pattern (stream 0) from probe points and other auxiliary
/// draws (stream 1 and up).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Seed(pub u64);

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Seed {
    pub fn derive(self, index: u64) -> Seed {
        Seed(splitmix64(
            self.0.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)),
        ))
    }

    pub fn rng(self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(stream);
        rng
    }
}

/// One sampled point pattern.
///
/// `parent_of[i]` indexes into `heads` and names the cluster head of
/// `germs[i]`. Germs outside the observation window are kept: they can still
/// cover points inside it.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Realization {
    pub germs: Vec<Point>,
    pub heads: Vec<Point>,
    pub parent_of: Vec<usize>,
}

impl Realization {
    pub fn head_of(&self, germ: usize) -> Point {
        self.heads[self.parent_of[germ]]
    }

    /// `(germ, head)` pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.germs
            .iter()
            .zip(&self.parent_of)
            .map(|(g, &h)| (*g, self.heads[h]))
    }
}

pub const DEFAULT_POINT_CAP: u64 = 10_000_000;

/// Extra dilation, in units of `1/sqrt(lambda_p)`, of the region holding the
/// heads of a Poisson deployment. The chance that no head lies within this
/// pad of a sensor is `exp(-25π)`.
pub const HEAD_PAD_SPACINGS: f64 = 5.0;

/// Sampler with a hard cap on the expected number of generated points.
#[derive(Debug, Clone, Copy)]
pub struct Sampler {
    pub max_expected_points: u64,
}

impl Default for Sampler {
    fn default() -> Self {
        Self {
            max_expected_points: DEFAULT_POINT_CAP,
        }
    }
}

/// Samples `spec` on `window` dilated by `margin`, with the default cap.
pub fn sample(spec: &ProcessSpec, window: &Window, margin: f64, seed: Seed) -> Result<Realization> {
    Sampler::default().sample(spec, window, margin, seed)
}

fn poisson_count<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> Result<usize> {
    if mean <= 0.0 {
        return Ok(0);
    }
    let dist = Poisson::new(mean).map_err(|_| Error::domain("poisson mean", mean, "out of range"))?;
    let n: f64 = dist.sample(rng);
    Ok(n as usize)
}

impl Sampler {
    pub fn sample(&self, spec: &ProcessSpec, window: &Window, margin: f64, seed: Seed) -> Result<Realization> {
        self.sample_with(spec, window, margin, &mut seed.rng(0))
    }

    /// Expected number of points (parents, heads and sensors) the sampler
    /// will draw.
    pub fn expected_points(spec: &ProcessSpec, window: &Window, margin: f64) -> f64 {
        let lambda_p = spec.lambda_p();
        let sensors = spec.total_density() * window.dilated(margin).area();
        let heads = match spec {
            ProcessSpec::Poisson { .. } if lambda_p > 0.0 => {
                lambda_p * window.dilated(margin + HEAD_PAD_SPACINGS / libm::sqrt(lambda_p)).area()
            }
            _ => lambda_p * window.dilated(margin).area(),
        };
        sensors + heads
    }

    pub fn sample_with<R: Rng + ?Sized>(
        &self,
        spec: &ProcessSpec,
        window: &Window,
        margin: f64,
        rng: &mut R,
    ) -> Result<Realization> {
        spec.validate()?;
        non_negative("margin", margin)?;
        let expected = Self::expected_points(spec, window, margin);
        if expected > self.max_expected_points as f64 {
            return Err(Error::ResourceLimit {
                expected,
                cap: self.max_expected_points,
            });
        }

        let region = window.dilated(margin);
        let lambda_p = spec.lambda_p();
        let m = spec.mean_cluster_size();
        let mut out = Realization::default();

        match *spec {
            ProcessSpec::Poisson { .. } => {
                let n = poisson_count(spec.total_density() * region.area(), rng)?;
                out.germs = (0..n).map(|_| region.uniform(rng)).collect();
                if lambda_p > 0.0 {
                    let head_region = window.dilated(margin + HEAD_PAD_SPACINGS / libm::sqrt(lambda_p));
                    let k = poisson_count(lambda_p * head_region.area(), rng)?;
                    out.heads = (0..k).map(|_| head_region.uniform(rng)).collect();
                }
                if !out.germs.is_empty() {
                    if out.heads.is_empty() {
                        // Vanishingly rare; without a head there is nothing to assign.
                        out.germs.clear();
                    } else {
                        let grid = PointGrid::new(&out.heads, 1.0 / libm::sqrt(lambda_p));
                        out.parent_of = out
                            .germs
                            .iter()
                            .map(|g| grid.nearest(g).map(|(i, _)| i).expect("heads are non-empty"))
                            .collect();
                    }
                }
            }
            ProcessSpec::Matern { r_d, .. } => {
                let k = poisson_count(lambda_p * region.area(), rng)?;
                out.heads = (0..k).map(|_| region.uniform(rng)).collect();
                for (h, head) in out.heads.iter().enumerate() {
                    let n = poisson_count(m, rng)?;
                    for _ in 0..n {
                        let rho = r_d * libm::sqrt(rng.random::<f64>());
                        let theta = 2.0 * PI * rng.random::<f64>();
                        let (s, c) = libm::sincos(theta);
                        out.germs.push(Point::new(head.x + rho * c, head.y + rho * s));
                        out.parent_of.push(h);
                    }
                }
            }
            ProcessSpec::Thomas { sigma, .. } => {
                let k = poisson_count(lambda_p * region.area(), rng)?;
                out.heads = (0..k).map(|_| region.uniform(rng)).collect();
                for (h, head) in out.heads.iter().enumerate() {
                    let n = poisson_count(m, rng)?;
                    for _ in 0..n {
                        let dx: f64 = StandardNormal.sample(rng);
                        let dy: f64 = StandardNormal.sample(rng);
                        out.germs.push(Point::new(head.x + sigma * dx, head.y + sigma * dy));
                        out.parent_of.push(h);
                    }
                }
            }
        }
        Ok(out)
    }
}
