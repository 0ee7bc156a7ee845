use thiserror::Error;

/// Every failure the library can report. The CLI maps these onto exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("capacity exceeded: {what} has size {size}, cap is {cap}")]
    Capacity { what: String, size: usize, cap: usize },

    #[error("zero denominator: {0}")]
    ZeroDenominator(String),

    #[error("undefined ratio: {0}")]
    UndefinedRatio(String),

    #[error("composition error: {0}")]
    Composition(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("search exhausted: no candidate up to n = {searched_to}; resume from n = {resume_from}")]
    SearchExhausted { searched_to: u64, resume_from: u64 },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
