use thiserror::Error;

/// Errors raised by the numerical kernels.
///
/// `InvalidParameter` and `Range` are precondition failures (the caller
/// passed something outside an operation's domain); the remaining variants
/// describe results that cannot be produced for otherwise valid input.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("integral diverges: {0}")]
    Divergent(String),

    #[error("zero norm: {0}")]
    ZeroNorm(String),

    #[error("construction infeasible: {0}")]
    Infeasible(String),

    #[error("placement overflow: {0}")]
    PlacementOverflow(String),

    #[error("resolution error: {0}")]
    Resolution(String),

    #[error("insufficient range: {0}")]
    InsufficientRange(String),

    #[error("inequality falsified: {0}")]
    Falsified(String),
}

impl Error {
    /// True for errors caused by arguments outside an operation's domain.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::Range(_)
                | Error::Infeasible(_)
                | Error::InsufficientRange(_)
                | Error::Resolution(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
