//! Error taxonomy shared by every module.
//!
//! Three classes matter to callers and map onto distinct CLI exit codes:
//! invalid input (the request itself is malformed), budget refusal (the
//! requested computation is sound but exceeds a configured enumeration
//! budget; nothing partial is returned), and invariant violation (a checked
//! mathematical identity failed, with the counterexample in the message).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The request is malformed: bad dimensions, unknown labels, wrong
    /// quiver family for the operation, and so on.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An enumeration would exceed the configured budget. Refusal is total:
    /// no truncated or partial answer is produced.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// A machine-checked identity failed. The message carries the
    /// counterexample; this is always a bug in the engine or its inputs,
    /// never a recoverable condition.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::BudgetExceeded(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::InvariantViolation(msg.into())
    }
}
