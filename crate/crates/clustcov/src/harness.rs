//! Seeded, parallel Monte Carlo estimators.
//!
//! Realization `i` draws its pattern from `seed.derive(i).rng(0)` and its
//! probe points from stream 1, and per-realization results are reduced in
//! index order, so an estimate depends on the config and seed but never on
//! the number of threads.

use rayon::prelude::*;

use clustcov_core::montecarlo::{check_sensing_window, coverage_margin, covered_fraction, event_sensed, power_density};
use clustcov_core::power::PowerParams;
use clustcov_core::process::Sampler;
use clustcov_core::{BooleanModel, Error, Estimate, Realization, Result, Seed, Window};

/// Caps the worker count of every estimator, whatever the config asks for.
pub const THREADS_ENV: &str = "CLUSTCOV_THREADS";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub n_realizations: usize,
    /// Probe points per realization; only the area-fraction estimator uses it.
    pub n_probes: usize,
    pub window: Window,
    pub seed: Seed,
    pub parallelism: usize,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            n_realizations: 200,
            n_probes: 10_000,
            window: Window::new(1000.0, 1000.0).expect("positive window"),
            seed: Seed(0),
            parallelism: default_parallelism(),
        }
    }
}

pub fn default_parallelism() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("n_realizations", self.n_realizations),
            ("n_probes", self.n_probes),
            ("parallelism", self.parallelism),
        ] {
            if v == 0 {
                return Err(Error::Domain {
                    name,
                    value: 0.0,
                    reason: "must be >= 1",
                });
            }
        }
        Ok(())
    }

    /// Worker count after applying [`THREADS_ENV`].
    pub fn threads(&self) -> usize {
        let cap = std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0);
        match cap {
            Some(cap) => self.parallelism.min(cap),
            None => self.parallelism,
        }
    }
}

/// Evaluates `f` for every realization index and returns the results in
/// index order.
fn per_realization<T, F>(cfg: &McConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads())
        .build()
        .expect("thread pool");
    pool.install(|| (0..cfg.n_realizations as u64).into_par_iter().map(f).collect())
}

/// Pattern used by realization `index` of an estimator with this margin.
pub fn realization(model: &BooleanModel, cfg: &McConfig, margin: f64, index: u64) -> Result<Realization> {
    Sampler::default().sample(&model.process, &cfg.window, margin, cfg.seed.derive(index))
}

/// Fraction of the window covered by the union of sensing disks. The
/// realization is the independent unit: its probe fraction is one sample.
pub fn estimate_fac(model: &BooleanModel, cfg: &McConfig) -> Result<Estimate> {
    model.validate()?;
    let margin = coverage_margin(model);
    let fractions = per_realization(cfg, |i| {
        let r = realization(model, cfg, margin, i)?;
        let mut probes = cfg.seed.derive(i).rng(1);
        Ok(covered_fraction(
            &r,
            model.sensing_radius,
            &cfg.window,
            cfg.n_probes,
            &mut probes,
        ))
    })?;
    Ok(Estimate::from_samples(&fractions))
}

/// Probability that a disk event of radius `r_k` at the window center is
/// sensed, with a normal-approximation binomial interval.
pub fn estimate_sensing_prob(model: &BooleanModel, r_k: f64, cfg: &McConfig) -> Result<Estimate> {
    model.validate()?;
    check_sensing_window(model, r_k, &cfg.window)?;
    let center = cfg.window.center();
    let sensed = per_realization(cfg, |i| {
        let r = realization(model, cfg, 0.0, i)?;
        Ok(event_sensed(&r, model.sensing_radius, r_k, &center))
    })?;
    let hits = sensed.iter().filter(|&&s| s).count() as u64;
    Ok(Estimate::from_proportion(hits, sensed.len() as u64))
}

/// Per-unit-area power for sensors to reach their cluster heads.
pub fn estimate_power(model: &BooleanModel, p: &PowerParams, cfg: &McConfig) -> Result<Estimate> {
    model.validate()?;
    let margin = model.process.cluster_reach();
    let densities = per_realization(cfg, |i| {
        let r = realization(model, cfg, margin, i)?;
        Ok(power_density(&r, &cfg.window, p.tau, p.alpha))
    })?;
    Ok(Estimate::from_samples(&densities))
}
