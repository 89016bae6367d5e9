use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use clustcov::commands::{analytic, power_sweep, simulate, validate};
use clustcov::figures::{self, Runner};
use clustcov::{AppError, ExperimentConfig, Result};

/// Coverage of clustered and Poisson sensor deployments.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Write CSV here instead of the config's output path or stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Override the Monte Carlo seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Capacity functionals and Matérn bounds over the event sweep.
    Analytic {
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Monte Carlo estimates for each series.
    Simulate {
        config: PathBuf,
        /// Also write the first realization of each series as CSV.
        #[arg(long)]
        dump: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Point coverage of each deployment across a power-budget sweep.
    PowerSweep {
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Analytic-versus-simulation checks; exits 1 if any fails.
    Validate {
        /// Defaults to the bundled suite.
        config: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Regenerate a bundled figure's CSV.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        number: u8,
        #[command(flatten)]
        common: Common,
    },
}

fn prepare(mut cfg: ExperimentConfig, common: &Common) -> (ExperimentConfig, Option<PathBuf>) {
    if let Some(seed) = common.seed {
        cfg.mc.seed = seed;
    }
    let out = common.output.clone().or_else(|| cfg.output.path.clone());
    (cfg, out)
}

fn with_output(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| AppError::Output(format!("{}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            let result = f(&mut w);
            w.flush()?;
            result
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            let result = f(&mut lock);
            lock.flush()?;
            result
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analytic { config, common } => {
            let (cfg, out) = prepare(ExperimentConfig::load(&config)?, &common);
            with_output(out.as_deref(), |w| analytic::run(&cfg, w))
        }
        Command::Simulate { config, dump, common } => {
            let (cfg, out) = prepare(ExperimentConfig::load(&config)?, &common);
            if let Some(path) = dump {
                for p in simulate::dump(&cfg, &path)? {
                    eprintln!("wrote {}", p.display());
                }
            }
            with_output(out.as_deref(), |w| simulate::run(&cfg, w))
        }
        Command::PowerSweep { config, common } => {
            let (cfg, out) = prepare(ExperimentConfig::load(&config)?, &common);
            with_output(out.as_deref(), |w| power_sweep::run(&cfg, w))
        }
        Command::Validate { config, common } => {
            let cfg = match config {
                Some(p) => ExperimentConfig::load(&p)?,
                None => ExperimentConfig::parse(figures::VALIDATE_CONFIG)?,
            };
            let (cfg, out) = prepare(cfg, &common);
            with_output(out.as_deref(), |w| validate::run(&cfg, w))
        }
        Command::Figure { number, common } => {
            let fig = figures::figure(number).expect("clap restricts the range");
            let (cfg, out) = prepare(fig.config()?, &common);
            eprintln!("figure {}: {}", fig.number, fig.title);
            with_output(out.as_deref(), |w| match fig.runner {
                Runner::Simulate => simulate::run(&cfg, w),
                Runner::Analytic => analytic::run(&cfg, w),
                Runner::PowerSweep => power_sweep::run(&cfg, w),
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
