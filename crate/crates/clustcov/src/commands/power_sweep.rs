use std::io::Write;

use clustcov_core::analytic::{cap_mcp, cap_ppp, cap_tcp, CoverageQuery};
use clustcov_core::power::{solve_m, solve_r_d, solve_sigma};
use clustcov_core::{BooleanModel, ProcessSpec, QuadratureSettings};

use crate::config::ExperimentConfig;
use crate::error::{AppError, Result};
use crate::output::{fmt_num, fmt_opt, Table};

pub const HEADER: [&str; 7] = ["e_net", "r_d", "cov_mcp", "sigma", "cov_tcp", "m_ppp", "cov_ppp"];

/// The deployment held fixed while the budget varies.
#[derive(Debug, Clone, Copy)]
pub struct SweepModel {
    pub m: f64,
    pub lambda_p: f64,
    pub sensing_radius: f64,
    pub tau: f64,
    pub alpha: f64,
}

/// One budget: the spread (or PPP cluster size) it buys and the resulting
/// point-coverage probability for each deployment.
#[derive(Debug, Clone, Copy, Default)]
pub struct SweepRow {
    pub e_net: f64,
    pub r_d: Option<f64>,
    pub cov_mcp: Option<f64>,
    pub sigma: Option<f64>,
    pub cov_tcp: Option<f64>,
    pub m_ppp: Option<f64>,
    pub cov_ppp: Option<f64>,
}

fn model_from(cfg: &ExperimentConfig) -> Result<SweepModel> {
    let p = &cfg.power;
    let need =
        |v: Option<f64>, name: &str| v.ok_or_else(|| AppError::Config(format!("power: power-sweep needs {name}")));
    Ok(SweepModel {
        m: need(p.m, "m")?,
        lambda_p: need(p.lambda_p, "lambda_p")?,
        sensing_radius: need(p.sensing_radius, "R")?,
        tau: p.tau,
        alpha: p.alpha,
    })
}

/// Evaluates one budget; failures are returned alongside whatever cells
/// could be computed.
pub fn evaluate(s: &SweepModel, e_net: f64, q: &QuadratureSettings) -> (SweepRow, Vec<clustcov_core::Error>) {
    let mut row = SweepRow {
        e_net,
        ..SweepRow::default()
    };
    let mut errors = Vec::new();
    let coverage = |process: ProcessSpec| {
        let query = CoverageQuery::new(BooleanModel::new(process, s.sensing_radius), 0.0).with_quadrature(*q);
        match process {
            ProcessSpec::Matern { .. } => cap_mcp(&query),
            _ => cap_tcp(&query),
        }
    };
    match solve_r_d(e_net, s.m, s.lambda_p, s.tau, s.alpha).and_then(|r_d| {
        row.r_d = Some(r_d);
        coverage(ProcessSpec::Matern {
            lambda_p: s.lambda_p,
            m: s.m,
            r_d,
        })
    }) {
        Ok(c) => row.cov_mcp = Some(c),
        Err(e) => errors.push(e),
    }
    match solve_sigma(e_net, s.m, s.lambda_p, s.tau, s.alpha).and_then(|sigma| {
        row.sigma = Some(sigma);
        coverage(ProcessSpec::Thomas {
            lambda_p: s.lambda_p,
            m: s.m,
            sigma,
        })
    }) {
        Ok(c) => row.cov_tcp = Some(c),
        Err(e) => errors.push(e),
    }
    match solve_m(e_net, s.lambda_p, s.tau, s.alpha).and_then(|m| {
        row.m_ppp = Some(m);
        cap_ppp(m * s.lambda_p, s.sensing_radius, 0.0)
    }) {
        Ok(c) => row.cov_ppp = Some(c),
        Err(e) => errors.push(e),
    }
    (row, errors)
}

pub fn run<W: Write>(cfg: &ExperimentConfig, out: W) -> Result<()> {
    let model = model_from(cfg)?;
    let budgets = cfg
        .power
        .e_net
        .as_ref()
        .ok_or_else(|| AppError::Config("power: power-sweep needs an e_net sweep".into()))?
        .values("power.e_net")?;
    let q = cfg.quadrature()?;
    let mut table = Table::new(out, &HEADER)?;
    let mut failures = 0;
    for e_net in budgets {
        let (row, errors) = evaluate(&model, e_net, &q);
        for e in &errors {
            eprintln!("e_net={}: {e}", fmt_num(e_net));
        }
        failures += errors.len();
        table.row([
            fmt_num(row.e_net),
            fmt_opt(row.r_d),
            fmt_opt(row.cov_mcp),
            fmt_opt(row.sigma),
            fmt_opt(row.cov_tcp),
            fmt_opt(row.m_ppp),
            fmt_opt(row.cov_ppp),
        ])?;
    }
    table.finish()?;
    super::finish_rows(failures)
}
