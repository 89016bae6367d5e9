//! Analytic-versus-simulation regression gate.

use std::io::Write;

use clustcov_core::analytic::{
    cap_mcp, cap_mcp_area_bounds, cap_mcp_area_bounds_closed_form, cap_mcp_limit, capacity, ClusterExponent,
    CoverageQuery, McpLimit,
};
use clustcov_core::power::required_power;
use clustcov_core::{BooleanModel, Estimate, ProcessSpec, QuadratureSettings};

use crate::config::{ExperimentConfig, Series};
use crate::error::{AppError, Result};
use crate::harness::{estimate_fac, estimate_power, estimate_sensing_prob, McConfig};
use crate::output::fmt_num;
use crate::suites::{nesting_grid, nesting_slack, nesting_violation, power_cases, roundtrip_error};

/// Simulation checks accept deviations up to this many standard errors
/// (two-sided 99.9%), so a suite of a few dozen checks rarely trips by
/// chance.
pub const Z_AGREEMENT: f64 = 3.29;

pub const LIMIT_TOL: f64 = 1e-3;
pub const ROUNDTRIP_TOL: f64 = 1e-10;
pub const GRID_SIDE: usize = 5;
pub const ROUNDTRIP_CASES: usize = 100;

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub tolerance: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
    /// Informational lines that never fail the run.
    pub notes: Vec<String>,
}

impl Report {
    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn find<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Check> + 'a {
        self.checks.iter().filter(move |c| c.name.starts_with(prefix))
    }

    fn numeric(&mut self, name: String, expected: f64, actual: f64, tol: f64) {
        self.checks.push(Check {
            name,
            expected: fmt_num(expected),
            actual: fmt_num(actual),
            tolerance: fmt_num(tol),
            passed: (actual - expected).abs() <= tol,
        });
    }

    fn error(&mut self, name: String, expected: &str, e: impl std::fmt::Display) {
        self.checks.push(Check {
            name,
            expected: expected.to_string(),
            actual: format!("error: {e}"),
            tolerance: String::new(),
            passed: false,
        });
    }

    pub fn write<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        writeln!(
            out,
            "{:<width$}  {:>16}  {:>16}  {:>12}  result",
            "check", "expected", "actual", "tolerance"
        )?;
        for c in &self.checks {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            writeln!(
                out,
                "{:<width$}  {:>16}  {:>16}  {:>12}  {verdict}",
                c.name, c.expected, c.actual, c.tolerance
            )?;
        }
        for n in &self.notes {
            writeln!(out, "note: {n}")?;
        }
        writeln!(out, "{} checks, {} failed", self.checks.len(), self.failed())
    }
}

pub fn run<W: Write>(cfg: &ExperimentConfig, out: W) -> Result<()> {
    let report = checks(cfg)?;
    report.write(out)?;
    match report.failed() {
        0 => Ok(()),
        failed => Err(AppError::ValidationFailed {
            failed,
            total: report.checks.len(),
        }),
    }
}

pub fn checks(cfg: &ExperimentConfig) -> Result<Report> {
    let series = cfg.series()?;
    let radii = cfg.event.radii()?;
    let mc = cfg.mc()?;
    let q = cfg.quadrature()?;
    let power = cfg.power_params()?;
    let exponent: ClusterExponent = cfg.diagnostics.simple_bound_exponent.into();
    let mut report = Report::default();

    for s in &series {
        series_checks(&mut report, s, &radii, &mc, &q, exponent);
        if cfg.diagnostics.compare_closed_form_bounds {
            closed_form_notes(&mut report, s, &radii, &q);
        }
        power_checks(&mut report, s, &power, &mc);
    }
    grid_checks(&mut report, &mc, &q, exponent);
    Ok(report)
}

fn series_checks(
    report: &mut Report,
    s: &Series,
    radii: &[f64],
    mc: &McConfig,
    q: &QuadratureSettings,
    exponent: ClusterExponent,
) {
    let label = &s.label;
    let query = |model: BooleanModel, r_k: f64| CoverageQuery::new(model, r_k).with_quadrature(*q);
    for &r_k in radii {
        let at = format!("{label} r_K={}", fmt_num(r_k));
        let cap = match capacity(&query(s.model, r_k)) {
            Ok(c) => c,
            Err(e) => {
                report.error(format!("{at}: capacity"), "value", e);
                continue;
            }
        };

        let merged = BooleanModel::new(s.model.process, s.model.sensing_radius + r_k);
        match capacity(&query(merged, 0.0)) {
            Ok(v) => report.numeric(format!("{at}: radius fungibility"), cap, v, 0.0),
            Err(e) => report.error(format!("{at}: radius fungibility"), &fmt_num(cap), e),
        }

        if let ProcessSpec::Matern { .. } = s.model.process {
            let qq = query(s.model, r_k);
            match nesting_violation(&qq, exponent) {
                Ok(v) => report.checks.push(Check {
                    name: format!("{at}: bound nesting"),
                    expected: "<= 0".into(),
                    actual: fmt_num(v),
                    tolerance: fmt_num(nesting_slack(q)),
                    passed: v <= nesting_slack(q),
                }),
                Err(e) => report.error(format!("{at}: bound nesting"), "<= 0", e),
            }
        }

        let name = format!("{at}: sensing probability vs simulation");
        match estimate_sensing_prob(&s.model, r_k, mc) {
            // Binomial standard error under the analytic value, so an exact
            // zero or one is not judged against a zero-width interval.
            Ok(e) => {
                let se = (cap * (1.0 - cap) / e.n_samples as f64).sqrt();
                report.numeric(name, cap, e.value, Z_AGREEMENT * se + 1e-12)
            }
            Err(e) => report.error(name, &fmt_num(cap), e),
        }
    }

    let name = format!("{label}: area fraction vs simulation");
    match capacity(&query(s.model, 0.0)) {
        Ok(cap) => match estimate_fac(&s.model, mc) {
            Ok(e) => agreement(report, name, cap, &e),
            Err(e) => report.error(name, &fmt_num(cap), e),
        },
        Err(e) => report.error(name, "value", e),
    }

    if let ProcessSpec::Matern { lambda_p, m, .. } = s.model.process {
        let r = s.model.sensing_radius;
        for (which, r_d, tag) in [
            (McpLimit::ClusterRadiusToZero, r / 1e3, "r_d -> 0"),
            (McpLimit::ClusterRadiusToInfinity, r * 1e3, "r_d -> inf"),
        ] {
            let name = format!("{label}: limit {tag}");
            let model = BooleanModel::new(ProcessSpec::Matern { lambda_p, m, r_d }, r);
            match (cap_mcp(&query(model, 0.0)), cap_mcp_limit(&query(model, 0.0), which)) {
                (Ok(v), Ok(limit)) => report.numeric(name, limit, v, LIMIT_TOL),
                (Err(e), _) | (_, Err(e)) => report.error(name, "limit", e),
            }
        }
    }
}

fn agreement(report: &mut Report, name: String, expected: f64, e: &Estimate) {
    report.numeric(name, expected, e.value, Z_AGREEMENT * e.std_error + 1e-12);
}

fn power_checks(report: &mut Report, s: &Series, power: &clustcov_core::power::PowerParams, mc: &McConfig) {
    let name = format!("{}: power vs simulation", s.label);
    let process = s.model.process;
    let expected = if process.total_density() == 0.0 {
        Ok(0.0)
    } else {
        required_power(&process, power)
    };
    match expected {
        Ok(want) => match estimate_power(&s.model, power, mc) {
            Ok(e) => agreement(report, name, want, &e),
            Err(e) => report.error(name, &fmt_num(want), e),
        },
        Err(e) => report.error(name, "value", e),
    }
}

fn closed_form_notes(report: &mut Report, s: &Series, radii: &[f64], q: &QuadratureSettings) {
    if !matches!(s.model.process, ProcessSpec::Matern { .. }) {
        return;
    }
    for &r_k in radii {
        let qq = CoverageQuery::new(s.model, r_k).with_quadrature(*q);
        if let (Ok(closed), Ok(integrated)) = (cap_mcp_area_bounds_closed_form(&qq), cap_mcp_area_bounds(&qq)) {
            report.notes.push(format!(
                "{} r_K={}: closed-form area bounds ({}, {}) vs integrated ({}, {})",
                s.label,
                fmt_num(r_k),
                fmt_num(closed.lower),
                fmt_num(closed.upper),
                fmt_num(integrated.lower),
                fmt_num(integrated.upper)
            ));
        }
    }
}

fn grid_checks(report: &mut Report, mc: &McConfig, q: &QuadratureSettings, exponent: ClusterExponent) {
    let slack = nesting_slack(q);
    let mut worst = f64::NEG_INFINITY;
    let mut failures = 0;
    for case in nesting_grid(mc.seed, GRID_SIDE) {
        match nesting_violation(&case.query(*q), exponent) {
            Ok(v) => {
                worst = worst.max(v);
                if v > slack {
                    failures += 1;
                }
            }
            Err(_) => failures += 1,
        }
    }
    report.checks.push(Check {
        name: format!("randomized grid ({} cases): bound nesting", GRID_SIDE.pow(3)),
        expected: "<= 0".into(),
        actual: fmt_num(worst),
        tolerance: fmt_num(slack),
        passed: failures == 0,
    });

    let mut worst = 0.0f64;
    let mut failed = false;
    for c in power_cases(mc.seed, ROUNDTRIP_CASES) {
        match roundtrip_error(&c) {
            Ok(v) => worst = worst.max(v),
            Err(_) => failed = true,
        }
    }
    report.checks.push(Check {
        name: format!("randomized grid ({ROUNDTRIP_CASES} cases): power solver roundtrip"),
        expected: "0".into(),
        actual: fmt_num(worst),
        tolerance: fmt_num(ROUNDTRIP_TOL),
        passed: !failed && worst <= ROUNDTRIP_TOL,
    });
}
