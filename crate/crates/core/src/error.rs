use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("coordinate {index} = {value} lies outside [0, 1]")]
    CoordinateOutOfRange { index: usize, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("generalized inverse failed to bracket x = {0} (generator not monotone?)")]
    InverseBracket(f64),

    #[error("limit schedule underflow: s = {0:e} is below 1e-300")]
    ScheduleUnderflow(f64),

    #[error("invalid tail dependence function: {0}")]
    InvalidTdf(String),

    #[error("invalid diagonal section: {0}")]
    InvalidDiagonal(String),

    #[error("nesting condition violated: {0}")]
    NestingViolated(String),

    #[error("validity audit failed: {0}")]
    AuditFailed(String),

    #[error("quadrature supports d <= 3, got d = {0}")]
    QuadratureDimension(usize),

    #[error("quadrature resolutions disagree: {low} vs {high}")]
    QuadratureDisagreement { low: f64, high: f64 },

    #[error("empty sample: {0}")]
    EmptySample(String),

    #[error("regular variation index did not converge: {0}")]
    IndexNotConverged(String),

    #[error("copula contains a user-supplied function and has no descriptor")]
    NotSerializable,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
