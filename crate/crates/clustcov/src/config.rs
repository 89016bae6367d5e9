//! TOML experiment configs.
//!
//! ```toml
//! [[series]]
//! label = "mcp-r80"
//! process = "mcp"          # ppp | mcp | tcp
//! lambda_p = 20e-6         # parents (heads) per m²
//! m = 3.0                  # mean sensors per parent
//! r_d = 60.0               # mcp cluster radius
//! R = 80.0                 # sensing radius
//!
//! [event]
//! sweep = { min = 0.0, max = 40.0, step = 5.0 }   # or: r_k = 10.0
//!
//! [mc]
//! n_realizations = 200
//! seed = 1
//! estimators = ["fac", "sensing_prob", "power"]
//!
//! [power]
//! tau = 1.0
//! alpha = 2.0
//! ```
//!
//! All lengths are meters and densities are per m².

use std::path::{Path, PathBuf};

use serde::Deserialize;

use clustcov_core::analytic::ClusterExponent;
use clustcov_core::power::PowerParams;
use clustcov_core::{BooleanModel, ProcessSpec, QuadratureSettings, Seed, Window};

use crate::error::{AppError, Result};
use crate::harness::{default_parallelism, McConfig};

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub series: Vec<SeriesConfig>,
    #[serde(default)]
    pub event: EventConfig,
    #[serde(default)]
    pub mc: McSection,
    #[serde(default)]
    pub power: PowerSection,
    #[serde(default)]
    pub quadrature: QuadratureSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProcessKind {
    #[serde(alias = "poisson")]
    Ppp,
    #[serde(alias = "matern")]
    Mcp,
    #[serde(alias = "thomas")]
    Tcp,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesConfig {
    pub label: Option<String>,
    pub process: ProcessKind,
    pub lambda_p: f64,
    pub m: f64,
    pub r_d: Option<f64>,
    pub sigma: Option<f64>,
    #[serde(rename = "R", alias = "sensing_radius")]
    pub sensing_radius: f64,
}

/// Evenly spaced values from `min` to `max`: by `step`, or `points` values
/// with linear or logarithmic spacing.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub min: f64,
    pub max: f64,
    pub step: Option<f64>,
    pub points: Option<usize>,
    #[serde(default)]
    pub spacing: Spacing,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

impl Sweep {
    pub fn values(&self, field: &str) -> Result<Vec<f64>> {
        let bad = |why: &str| AppError::Config(format!("{field}: {why}"));
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(bad("min and max must be finite"));
        }
        if self.min > self.max {
            return Err(bad("min must not exceed max"));
        }
        if self.min == self.max {
            return Ok(vec![self.min]);
        }
        match (self.step, self.points) {
            (Some(step), None) => {
                if self.spacing != Spacing::Linear {
                    return Err(bad("step only applies to linear spacing; use points"));
                }
                if step.is_nan() || step <= 0.0 {
                    return Err(bad("step must be > 0"));
                }
                // Index-based so long sweeps do not accumulate rounding.
                let n = ((self.max - self.min) / step * (1.0 + 1e-12)).floor() as usize;
                Ok((0..=n).map(|i| self.min + i as f64 * step).collect())
            }
            (None, Some(points)) => {
                if points < 2 {
                    return Err(bad("points must be >= 2 when min < max"));
                }
                let t = |i: usize| i as f64 / (points - 1) as f64;
                match self.spacing {
                    Spacing::Linear => Ok((0..points).map(|i| self.min + t(i) * (self.max - self.min)).collect()),
                    Spacing::Log => {
                        if self.min <= 0.0 {
                            return Err(bad("log spacing needs min > 0"));
                        }
                        let (a, b) = (self.min.ln(), self.max.ln());
                        Ok((0..points).map(|i| (a + t(i) * (b - a)).exp()).collect())
                    }
                }
            }
            _ => Err(bad("give exactly one of step or points")),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventConfig {
    pub r_k: Option<f64>,
    pub sweep: Option<Sweep>,
}

impl EventConfig {
    /// Event radii to evaluate; a bare config means point coverage.
    pub fn radii(&self) -> Result<Vec<f64>> {
        let radii = match (&self.r_k, &self.sweep) {
            (Some(_), Some(_)) => return Err(AppError::Config("event: give r_k or sweep, not both".into())),
            (Some(r), None) => vec![*r],
            (None, Some(s)) => s.values("event.sweep")?,
            (None, None) => vec![0.0],
        };
        if let Some(r) = radii.iter().find(|r| r.is_nan() || **r < 0.0) {
            return Err(AppError::Config(format!("event: r_k must be >= 0, got {r}")));
        }
        Ok(radii)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimator {
    Fac,
    SensingProb,
    Power,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McSection {
    #[serde(default = "McSection::default_realizations")]
    pub n_realizations: usize,
    #[serde(default = "McSection::default_probes")]
    pub n_probes: usize,
    #[serde(default = "McSection::default_side")]
    pub width: f64,
    #[serde(default = "McSection::default_side")]
    pub height: f64,
    #[serde(default)]
    pub seed: u64,
    pub parallelism: Option<usize>,
    #[serde(default = "McSection::default_estimators")]
    pub estimators: Vec<Estimator>,
}

impl McSection {
    fn default_realizations() -> usize {
        200
    }
    fn default_probes() -> usize {
        10_000
    }
    fn default_side() -> f64 {
        1000.0
    }
    fn default_estimators() -> Vec<Estimator> {
        vec![Estimator::Fac]
    }
}

impl Default for McSection {
    fn default() -> Self {
        Self {
            n_realizations: Self::default_realizations(),
            n_probes: Self::default_probes(),
            width: Self::default_side(),
            height: Self::default_side(),
            seed: 0,
            parallelism: None,
            estimators: Self::default_estimators(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerSection {
    #[serde(default = "PowerSection::default_tau")]
    pub tau: f64,
    #[serde(default = "PowerSection::default_alpha")]
    pub alpha: f64,
    /// Deployment held fixed by `power-sweep`.
    pub m: Option<f64>,
    pub lambda_p: Option<f64>,
    #[serde(rename = "R", alias = "sensing_radius")]
    pub sensing_radius: Option<f64>,
    /// Budgets swept by `power-sweep`, per m².
    pub e_net: Option<Sweep>,
}

impl PowerSection {
    fn default_tau() -> f64 {
        1.0
    }
    fn default_alpha() -> f64 {
        2.0
    }
}

impl Default for PowerSection {
    fn default() -> Self {
        Self {
            tau: Self::default_tau(),
            alpha: Self::default_alpha(),
            m: None,
            lambda_p: None,
            sensing_radius: None,
            e_net: None,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSection {
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_subdivisions: Option<usize>,
    pub tail_cutoff: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub path: Option<PathBuf>,
}

/// Switches that deliberately alter computations, for exercising the
/// validation suite.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Diagnostics {
    #[serde(default)]
    pub simple_bound_exponent: ExponentChoice,
    /// Also evaluate the transcribed closed-form area bounds and report how
    /// far they sit from the integrated ones.
    #[serde(default)]
    pub compare_closed_form_bounds: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExponentChoice {
    #[default]
    DiskArea,
    RadiusSquared,
}

impl From<ExponentChoice> for ClusterExponent {
    fn from(c: ExponentChoice) -> Self {
        match c {
            ExponentChoice::DiskArea => ClusterExponent::DiskArea,
            ExponentChoice::RadiusSquared => ClusterExponent::RadiusSquared,
        }
    }
}

/// A validated model with its output label.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub model: BooleanModel,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| AppError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| AppError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text).map_err(|e| match e {
            AppError::Config(msg) => AppError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn series(&self) -> Result<Vec<Series>> {
        if self.series.is_empty() {
            return Err(AppError::Config("no [[series]] defined".into()));
        }
        let mut out: Vec<Series> = Vec::with_capacity(self.series.len());
        for (i, s) in self.series.iter().enumerate() {
            let at = |msg: String| AppError::Config(format!("series[{i}]: {msg}"));
            let process = match s.process {
                ProcessKind::Ppp => {
                    if s.r_d.is_some() || s.sigma.is_some() {
                        return Err(at("ppp takes neither r_d nor sigma".into()));
                    }
                    ProcessSpec::Poisson {
                        lambda_p: s.lambda_p,
                        m: s.m,
                    }
                }
                ProcessKind::Mcp => ProcessSpec::Matern {
                    lambda_p: s.lambda_p,
                    m: s.m,
                    r_d: s.r_d.ok_or_else(|| at("mcp needs r_d".into()))?,
                },
                ProcessKind::Tcp => ProcessSpec::Thomas {
                    lambda_p: s.lambda_p,
                    m: s.m,
                    sigma: s.sigma.ok_or_else(|| at("tcp needs sigma".into()))?,
                },
            };
            let model = BooleanModel::new(process, s.sensing_radius);
            model.validate().map_err(|e| at(e.to_string()))?;
            let label = s
                .label
                .clone()
                .unwrap_or_else(|| format!("{}{}", process.kind_name(), i + 1));
            if label.is_empty() || label.contains(|c: char| c == ',' || c == '"' || c.is_control()) {
                return Err(at(format!(
                    "label {label:?} must be non-empty without commas or quotes"
                )));
            }
            if out.iter().any(|o| o.label == label) {
                return Err(at(format!("duplicate label {label:?}")));
            }
            out.push(Series { label, model });
        }
        Ok(out)
    }

    pub fn mc(&self) -> Result<McConfig> {
        let m = &self.mc;
        let window = Window::new(m.width, m.height).map_err(|e| AppError::Config(format!("mc: {e}")))?;
        let cfg = McConfig {
            n_realizations: m.n_realizations,
            n_probes: m.n_probes,
            window,
            seed: Seed(m.seed),
            parallelism: m.parallelism.unwrap_or_else(default_parallelism),
        };
        cfg.validate().map_err(|e| AppError::Config(format!("mc: {e}")))?;
        Ok(cfg)
    }

    pub fn power_params(&self) -> Result<PowerParams> {
        PowerParams::new(self.power.tau, self.power.alpha).map_err(|e| AppError::Config(format!("power: {e}")))
    }

    pub fn quadrature(&self) -> Result<QuadratureSettings> {
        let d = QuadratureSettings::default();
        let q = &self.quadrature;
        let s = QuadratureSettings {
            rel_tol: q.rel_tol.unwrap_or(d.rel_tol),
            abs_tol: q.abs_tol.unwrap_or(d.abs_tol),
            max_subdivisions: q.max_subdivisions.unwrap_or(d.max_subdivisions),
            tail_cutoff: q.tail_cutoff.unwrap_or(d.tail_cutoff),
        };
        s.validate().map_err(|e| AppError::Config(format!("quadrature: {e}")))?;
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweeps() {
        let s = Sweep {
            min: 0.0,
            max: 1.0,
            step: Some(0.1),
            points: None,
            spacing: Spacing::Linear,
        };
        let v = s.values("x").unwrap();
        assert_eq!(v.len(), 11);
        assert!((v[10] - 1.0).abs() < 1e-15);

        let s = Sweep {
            min: 1e-3,
            max: 1e1,
            step: None,
            points: Some(5),
            spacing: Spacing::Log,
        };
        let v = s.values("x").unwrap();
        assert!((v[2] - 0.1).abs() < 1e-15 && (v[4] - 10.0).abs() < 1e-12);

        let single = Sweep {
            min: 3.0,
            max: 3.0,
            step: Some(1.0),
            points: None,
            spacing: Spacing::Linear,
        };
        assert_eq!(single.values("x").unwrap(), vec![3.0]);

        let bad = Sweep {
            step: Some(0.0),
            ..s.clone()
        };
        assert!(bad.values("x").is_err());
    }

    #[test]
    fn errors_name_the_field() {
        let err = ExperimentConfig::parse("[[series]]\nprocess = \"mcp\"\nlambda_p = 1e-5\nm = 3\nR = 10\nrd = 4\n")
            .unwrap_err()
            .to_string();
        assert!(err.contains("rd") && err.contains("line"), "{err}");

        let cfg = ExperimentConfig::parse("[[series]]\nprocess = \"mcp\"\nlambda_p = 1e-5\nm = 3\nR = 10\n").unwrap();
        let err = cfg.series().unwrap_err().to_string();
        assert!(err.contains("series[0]") && err.contains("r_d"), "{err}");

        let cfg = ExperimentConfig::parse("[[series]]\nprocess = \"tcp\"\nlambda_p = 1e-5\nm = 3\nR = -1\nsigma = 2\n")
            .unwrap();
        assert!(cfg.series().unwrap_err().to_string().contains("series[0]"));
    }

    #[test]
    fn defaults() {
        let cfg =
            ExperimentConfig::parse("[[series]]\nprocess = \"poisson\"\nlambda_p = 1e-5\nm = 3\nR = 10\n").unwrap();
        let s = cfg.series().unwrap();
        assert_eq!(s[0].label, "ppp1");
        assert_eq!(cfg.event.radii().unwrap(), vec![0.0]);
        let mc = cfg.mc().unwrap();
        assert_eq!((mc.n_realizations, mc.n_probes), (200, 10_000));
        assert_eq!(cfg.quadrature().unwrap(), QuadratureSettings::default());
    }
}
