use thiserror::Error;

/// Errors produced by evaluation, root finding, inequality checks and scans.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid order: nu = {0} (must be finite and > -1)")]
    InvalidOrder(f64),

    #[error("invalid tolerance: {0} (must be finite and > 0)")]
    InvalidTolerance(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("overflow risk: unscaled value at x = {0} exceeds the f64 range, request exp-scaled output")]
    OverflowRisk(f64),

    #[error("tolerance unreachable: {0}")]
    ToleranceUnreachable(String),

    #[error("unsupported order for closed form: nu = {0}")]
    UnsupportedOrder(f64),

    #[error("no sign change found for nu = {nu} below scan cap {cap}")]
    NoSignChange { nu: f64, cap: f64 },

    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("order nu = {0} is not a small-denominator rational; exact mode unavailable")]
    OrderNotRational(f64),

    #[error("length mismatch: {0} numerators vs {1} denominators")]
    LengthMismatch(usize, usize),

    #[error("nonpositive denominator at index {0}")]
    NonpositiveDenominator(usize),

    #[error("unknown check: {0}")]
    UnknownCheck(String),

    #[error("invalid scan spec: {0}")]
    InvalidSpec(String),

    #[error("precision unavailable: {0}")]
    PrecisionUnavailable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
