//! Coverage analysis for clustered wireless sensor networks modeled as
//! Boolean germ-grain processes.
//!
//! Sensors (germs) are placed by a homogeneous Poisson point process, a
//! Matérn cluster process or a Thomas cluster process, and each one covers a
//! disk of fixed radius `R` (its grain). This crate provides
//!
//! * [`numerics`]: two-disk intersection areas and their bounds, the Gaussian
//!   mass of an offset disk, special functions and adaptive quadrature;
//! * [`analytic`]: capacity functionals (sensing probabilities of disk-shaped
//!   events), bounds and asymptotic limits;
//! * [`power`]: per-unit-area power requirements and their inverses;
//! * [`process`]: seeded samplers for the three point processes;
//! * [`grid`]: a uniform bucket grid for disk-coverage and nearest-point queries;
//! * [`montecarlo`]: per-realization Monte Carlo kernels and confidence intervals.
//!
//! The crate is `no_std` and only needs `alloc`. Threading, configuration
//! files and CSV output live in the `clustcov` companion crate.
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analytic;
pub mod grid;
pub mod montecarlo;
pub mod numerics;
pub mod power;
pub mod process;

mod error;

pub use error::{Error, Result};
pub use montecarlo::Estimate;
pub use numerics::QuadratureSettings;
pub use process::{BooleanModel, Point, ProcessSpec, Realization, Seed, Window};
