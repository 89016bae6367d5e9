use std::path::PathBuf;

/// Failures surfaced by the command-line tools, each tied to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("config error: {0}")]
    Config(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("output error: {0}")]
    Output(String),
    #[error("numeric failure: {0}")]
    Numeric(clustcov_core::Error),
    #[error("{failed} of {total} validation checks failed")]
    ValidationFailed { failed: usize, total: usize },
    #[error("{0} rows failed; see messages above")]
    RowFailures(usize),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::ValidationFailed { .. } => 1,
            AppError::Config(_) | AppError::Read { .. } => 2,
            AppError::Output(_) | AppError::Numeric(_) | AppError::RowFailures(_) => 3,
        }
    }
}

/// Domain errors come from parameter values, i.e. from the config; the rest
/// are numeric failures.
impl From<clustcov_core::Error> for AppError {
    fn from(e: clustcov_core::Error) -> Self {
        match e {
            clustcov_core::Error::Domain { .. } => AppError::Config(e.to_string()),
            _ => AppError::Numeric(e),
        }
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Output(e.to_string())
    }
}

impl From<csv::Error> for AppError {
    fn from(e: csv::Error) -> Self {
        AppError::Output(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, AppError>;
