use thiserror::Error;

/// Errors raised by the library.
///
/// The variants are grouped so that the CLI can map them onto exit codes:
/// configuration problems, numeric failures and broken invariants.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix of order {order} exceeds the enumeration limit {limit}")]
    DimensionOverLimit { order: usize, limit: usize },

    #[error("exponent overflow while evaluating at the configured precision ({0})")]
    ExponentOverflow(String),

    #[error("singular or ill-conditioned linear system at {precision} bits (residual {residual:e})")]
    Singular { precision: usize, residual: f64 },

    #[error("point is not strictly feasible: {0}")]
    NotStrictlyFeasible(String),

    #[error("no admissible step length (neighborhood lost upstream)")]
    NoAdmissibleStep,

    #[error("neighborhood violation at iteration {iter}: {detail}")]
    NeighborhoodViolation { iter: usize, detail: String },

    #[error("iteration limit {0} exceeded")]
    MaxIterations(usize),

    #[error("newton did not converge for lambda = {lambda} after {steps} steps (residual {residual:e})")]
    NoConvergence { lambda: String, steps: usize, residual: f64 },

    #[error("path is not monotone: {0}")]
    NonMonotone(String),

    #[error("breakpoint certification failed: {0}")]
    Certification(String),
}

impl Error {
    /// Exit code used by the `lw` binary: 2 for configuration errors,
    /// 3 for numeric failures, 1 for broken assertions.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DimensionMismatch { .. }
            | Error::Empty(_)
            | Error::InvalidArgument(_)
            | Error::Parse(_)
            | Error::DimensionOverLimit { .. } => 2,
            Error::ExponentOverflow(_)
            | Error::Singular { .. }
            | Error::NotStrictlyFeasible(_)
            | Error::NoAdmissibleStep
            | Error::MaxIterations(_)
            | Error::NoConvergence { .. } => 3,
            Error::NeighborhoodViolation { .. } | Error::NonMonotone(_) | Error::Certification(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
