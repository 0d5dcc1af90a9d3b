use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type. The message prefixes (`datum:`, `cap:`,
/// `invariant:`, `parse:`) are load-bearing: the CLI maps them to exit
/// codes and user-facing diagnostics.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed root datum or preset parameters.
    #[error("datum: {0}")]
    Datum(String),

    /// An enumeration exceeded its configured cap.
    #[error("cap: {0}")]
    CapExceeded(String),

    /// A cross-validation invariant failed while assembling results.
    /// These indicate a convention bug or a genuinely inconsistent input
    /// and are never silently ignored.
    #[error("invariant: {0}")]
    Invariant(String),

    /// Malformed input text (rationals, JSON documents).
    #[error("parse: {0}")]
    Parse(String),
}

impl Error {
    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn datum(msg: impl Into<String>) -> Self {
        Error::Datum(msg.into())
    }
}
