use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("invalid {name} = {value}: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// Adaptive quadrature ran out of subdivisions (or the semi-infinite tail
    /// rule hit its hard cap) before meeting the requested tolerance.
    #[error("{context}: quadrature did not converge (estimate {estimate}, error bound {error_bound})")]
    NotConverged {
        context: &'static str,
        estimate: f64,
        error_bound: f64,
    },

    /// The expected number of sampled points exceeds the configured cap.
    #[error("expected {expected:.0} points exceeds the cap of {cap}")]
    ResourceLimit { expected: f64, cap: u64 },
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain { name, value, reason }
    }

    /// Replaces the context label of a convergence failure.
    pub fn with_context(self, context: &'static str) -> Self {
        match self {
            Error::NotConverged {
                estimate, error_bound, ..
            } => Error::NotConverged {
                context,
                estimate,
                error_bound,
            },
            other => other,
        }
    }
}

/// Fails unless `value` is finite and strictly positive.
pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(name, value, "must be finite and > 0"))
    }
}

/// Fails unless `value` is finite and non-negative.
pub(crate) fn non_negative(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(name, value, "must be finite and >= 0"))
    }
}
