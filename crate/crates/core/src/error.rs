use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} must be positive, got {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("integration produced a non-finite state at t = {t}")]
    StepFailure { t: f64 },

    #[error("no fixed point on the {0} branch")]
    NoFixedPoint(&'static str),

    #[error("no stable fixed point to use as an overlap target")]
    NoStableTarget,

    #[error("shape mismatch: expected length {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("rule kind {0} is not valid here")]
    WrongRuleKind(&'static str),

    #[error("unknown parameter name {0:?}")]
    UnknownParameter(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
