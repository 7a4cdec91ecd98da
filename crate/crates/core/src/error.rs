use thiserror::Error;

/// Errors raised by constructions and parsers in this crate.
///
/// Verification failures are never errors: they are reported through the
/// various `*Report` types so callers can see exactly which check failed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: u32, right: u32 },

    #[error("cannot rescale order {from} to {to}: {from} does not divide {to}")]
    NotADivisor { from: u32, to: u32 },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("elements belong to different algebraic contexts")]
    ContextMismatch,

    #[error("invalid modulus polynomial: {0}")]
    InvalidModulus(String),

    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionTooLarge { dim: u64, cap: u64 },

    #[error("invalid dimension {0}")]
    InvalidDimension(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("construction `{route}` does not apply to dimension {dim}")]
    RouteNotApplicable { route: String, dim: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
