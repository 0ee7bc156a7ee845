//! The JSON envelope every command prints, and its exit codes.

use hcgl::Error;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    VerificationFailed,
    Capacity,
    DomainError,
    SearchExhausted,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::VerificationFailed => 2,
            Status::Capacity => 3,
            Status::DomainError => 4,
            Status::SearchExhausted => 5,
        }
    }

    pub fn of(e: &Error) -> Self {
        match e {
            Error::Capacity { .. } => Status::Capacity,
            Error::SearchExhausted { .. } => Status::SearchExhausted,
            // A self-check of the library failed.
            Error::VerificationFailed(_) | Error::InvalidCertificate(_) | Error::Internal(_) => {
                Status::VerificationFailed
            }
            Error::Domain(_)
            | Error::ZeroDenominator(_)
            | Error::UndefinedRatio(_)
            | Error::Composition(_)
            | Error::DivisionByZero
            | Error::Precondition(_) => Status::DomainError,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub trace: Value,
}

impl CommandResult {
    pub fn ok(payload: Value, trace: Value) -> Self {
        CommandResult { status: Status::Ok, payload, trace }
    }

    pub fn error(status: Status, message: impl Into<String>) -> Self {
        CommandResult { status, payload: serde_json::json!({ "error": message.into() }), trace: Value::Null }
    }

    pub fn from_error(e: &Error) -> Self {
        Self::error(Status::of(e), e.to_string())
    }
}

impl From<Error> for CommandResult {
    fn from(e: Error) -> Self {
        Self::from_error(&e)
    }
}
