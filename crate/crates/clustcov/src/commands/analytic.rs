use std::io::Write;

use clustcov_core::analytic::{cap_mcp_area_bounds, cap_mcp_simple_bounds_with, capacity, Bounds, CoverageQuery};
use clustcov_core::ProcessSpec;

use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::output::{fmt_num, fmt_opt, Table};

/// `thm3_*` are the lens bounds integrated numerically, `thm4_*` the
/// closed-form bounds; both are blank for non-Matérn series.
pub const HEADER: [&str; 7] = ["series", "r_K", "cap", "thm3_lo", "thm3_hi", "thm4_lo", "thm4_hi"];

struct Row {
    cap: Option<f64>,
    area: Option<Bounds>,
    simple: Option<Bounds>,
}

pub fn run<W: Write>(cfg: &ExperimentConfig, out: W) -> Result<()> {
    let series = cfg.series()?;
    let radii = cfg.event.radii()?;
    let quadrature = cfg.quadrature()?;
    let exponent = cfg.diagnostics.simple_bound_exponent.into();
    let mut table = Table::new(out, &HEADER)?;
    let mut failures = 0;
    for s in &series {
        let is_matern = matches!(s.model.process, ProcessSpec::Matern { .. });
        for &r_k in &radii {
            let q = CoverageQuery::new(s.model, r_k).with_quadrature(quadrature);
            let mut row = Row {
                cap: None,
                area: None,
                simple: None,
            };
            let mut note = |what: &str, e: clustcov_core::Error| {
                eprintln!("{} r_K={}: {what}: {e}", s.label, fmt_num(r_k));
                failures += 1;
            };
            match capacity(&q) {
                Ok(v) => row.cap = Some(v),
                Err(e) => note("capacity", e),
            }
            if is_matern {
                match cap_mcp_area_bounds(&q) {
                    Ok(b) => row.area = Some(b),
                    Err(e) => note("integrated bounds", e),
                }
                match cap_mcp_simple_bounds_with(&q, exponent) {
                    Ok(b) => row.simple = Some(b),
                    Err(e) => note("closed-form bounds", e),
                }
            }
            table.row([
                s.label.clone(),
                fmt_num(r_k),
                fmt_opt(row.cap),
                fmt_opt(row.area.map(|b| b.lower)),
                fmt_opt(row.area.map(|b| b.upper)),
                fmt_opt(row.simple.map(|b| b.lower)),
                fmt_opt(row.simple.map(|b| b.upper)),
            ])?;
        }
    }
    table.finish()?;
    super::finish_rows(failures)
}
