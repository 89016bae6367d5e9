//! Monte Carlo harness, experiment configs and command implementations for
//! the `clustcov` tool. The analytic and sampling machinery lives in
//! [`clustcov_core`].

pub mod commands;
pub mod config;
pub mod error;
pub mod figures;
pub mod harness;
pub mod output;
pub mod suites;

pub use config::ExperimentConfig;
pub use error::{AppError, Result};
pub use harness::{estimate_fac, estimate_power, estimate_sensing_prob, McConfig};
