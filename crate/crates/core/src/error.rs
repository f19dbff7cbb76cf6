use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },
    #[error("integrand returned a non-finite value at x = {abscissa}")]
    NonFinite { abscissa: f64 },
    #[error("quadrature did not converge (estimate {value}, error {error_estimate:e})")]
    NotConverged { value: f64, error_estimate: f64 },
    #[error("no closed form for symbol '{kind}' at level {level}; use quadrature")]
    NoClosedForm { kind: String, level: u32 },
    #[error("signal is empty")]
    EmptySignal,
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("reproducing kernel |K| = {magnitude:e} is below the division threshold")]
    KernelZero { magnitude: f64 },
    #[error("{0}")]
    LimitMismatch(String),
    #[error("{0}")]
    LimitNotSettled(String),
    #[error("value {value} leaves the domain [{lo}, {hi}] of the applied function")]
    RangeViolation { value: f64, lo: f64, hi: f64 },
    #[error("denominator |gamma(xi)| = {0:e} too small for a ratio")]
    DivisionGuard(f64),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("I/O error on {path}: {detail}")]
    Io { path: String, detail: String },
    #[error("malformed file {path}: {detail}")]
    Format { path: String, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        function,
        detail: detail.into(),
    }
}
