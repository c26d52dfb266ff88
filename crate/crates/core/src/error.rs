use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by evaluations and checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The function has a pole at the requested point.
    #[error("{function}: pole at {at}")]
    Pole { function: &'static str, at: Complex64 },
    /// The arguments lie outside the domain of the requested routine.
    #[error("{function}: {reason}")]
    Domain { function: &'static str, reason: String },
    /// A series or quadrature exhausted its budget.
    #[error("{what} did not converge after {work} steps (error estimate {err_est:e})")]
    NonConvergence {
        what: &'static str,
        work: usize,
        err_est: f64,
    },
}

impl Error {
    pub(crate) fn domain(function: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            function,
            reason: reason.into(),
        }
    }

    /// True for the numerical (rather than usage) failure kind.
    pub fn is_non_convergence(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
