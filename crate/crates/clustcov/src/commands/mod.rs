//! Subcommand implementations. Each writes CSV (or a report) to the given
//! writer; per-row numeric failures are reported on stderr, leave blank
//! cells and turn into [`AppError::RowFailures`] once every row is written.

pub mod analytic;
pub mod power_sweep;
pub mod simulate;
pub mod validate;

use crate::error::{AppError, Result};

pub(crate) fn finish_rows(failures: usize) -> Result<()> {
    if failures == 0 {
        Ok(())
    } else {
        Err(AppError::RowFailures(failures))
    }
}
