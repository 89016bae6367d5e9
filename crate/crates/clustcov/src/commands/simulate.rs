use std::io::Write;
use std::path::{Path, PathBuf};

use clustcov_core::montecarlo::coverage_margin;
use clustcov_core::Estimate;

use crate::config::{Estimator, ExperimentConfig, Series};
use crate::error::{AppError, Result};
use crate::harness::{estimate_fac, estimate_power, estimate_sensing_prob, realization, McConfig};
use crate::output::{fmt_num, Table};

/// `r_K` is blank for the area-fraction and power estimators.
pub const HEADER: [&str; 8] = [
    "series",
    "estimator",
    "r_K",
    "value",
    "std_error",
    "ci_lo",
    "ci_hi",
    "n",
];

pub const DUMP_HEADER: [&str; 4] = ["germ_x", "germ_y", "head_x", "head_y"];

pub fn run<W: Write>(cfg: &ExperimentConfig, out: W) -> Result<()> {
    let series = cfg.series()?;
    let mc = cfg.mc()?;
    let radii = cfg.event.radii()?;
    let power = cfg.power_params()?;
    let mut table = Table::new(out, &HEADER)?;
    let mut failures = 0;
    for s in &series {
        for est in &cfg.mc.estimators {
            let jobs: Vec<(Option<f64>, &str)> = match est {
                Estimator::Fac => vec![(None, "fac")],
                Estimator::SensingProb => radii.iter().map(|&r| (Some(r), "sensing_prob")).collect(),
                Estimator::Power => vec![(None, "power")],
            };
            for (r_k, name) in jobs {
                let result = match (est, r_k) {
                    (Estimator::SensingProb, Some(r_k)) => estimate_sensing_prob(&s.model, r_k, &mc),
                    (Estimator::Power, _) => estimate_power(&s.model, &power, &mc),
                    _ => estimate_fac(&s.model, &mc),
                };
                let r_k_cell = r_k.map(fmt_num).unwrap_or_default();
                match result {
                    Ok(e) => table.row(estimate_row(&s.label, name, r_k_cell, &e))?,
                    Err(e @ clustcov_core::Error::Domain { .. }) => {
                        return Err(AppError::Config(format!("series {}: {name}: {e}", s.label)))
                    }
                    Err(e) => {
                        eprintln!("{} {name}: {e}", s.label);
                        failures += 1;
                        table.row([s.label.as_str(), name, &r_k_cell, "", "", "", "", ""])?;
                    }
                }
            }
        }
    }
    table.finish()?;
    super::finish_rows(failures)
}

fn estimate_row(label: &str, name: &str, r_k: String, e: &Estimate) -> [String; 8] {
    [
        label.to_string(),
        name.to_string(),
        r_k,
        fmt_num(e.value),
        fmt_num(e.std_error),
        fmt_num(e.ci95.0),
        fmt_num(e.ci95.1),
        e.n_samples.to_string(),
    ]
}

/// Where the dump for `label` goes: `path` itself for a single series,
/// otherwise `stem-label.ext` next to it.
pub fn dump_path(path: &Path, label: &str, n_series: usize) -> PathBuf {
    if n_series == 1 {
        return path.to_path_buf();
    }
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}-{label}.{}", ext.to_string_lossy()),
        None => format!("{stem}-{label}"),
    };
    path.with_file_name(name)
}

/// Writes the first realization of the area-fraction estimator for each
/// series: one row per germ with its cluster head.
pub fn dump(cfg: &ExperimentConfig, path: &Path) -> Result<Vec<PathBuf>> {
    let series = cfg.series()?;
    let mc = cfg.mc()?;
    let mut written = Vec::new();
    for s in &series {
        let target = dump_path(path, &s.label, series.len());
        write_dump(s, &mc, &target)?;
        written.push(target);
    }
    Ok(written)
}

fn write_dump(s: &Series, mc: &McConfig, target: &Path) -> Result<()> {
    let r = realization(&s.model, mc, coverage_margin(&s.model), 0)?;
    let file = std::fs::File::create(target).map_err(|e| AppError::Output(format!("{}: {e}", target.display())))?;
    let mut table = Table::new(std::io::BufWriter::new(file), &DUMP_HEADER)?;
    for (g, h) in r.pairs() {
        table.row([fmt_num(g.x), fmt_num(g.y), fmt_num(h.x), fmt_num(h.y)])?;
    }
    table.finish()
}
