//! One error type for the whole crate.

use thiserror::Error;

/// Errors raised by matrix operations, structural checks, and file parsing.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Shapes that do not conform: mismatched operands, a non-square matrix
    /// where a square one is required, an odd dimension where block halves
    /// are needed, and similar size violations.
    #[error("{op}: dimension error: {details}")]
    Dimension { op: &'static str, details: String },

    /// A matrix of the right size that violates a required structural
    /// pattern, e.g. the Kähler block form `[[X, -Y], [Y, X]]` or the
    /// two-column pairing of a Kähler state.
    #[error("{op}: structure error: {details}")]
    Structure { op: &'static str, details: String },

    /// Input that is well-formed but semantically invalid: non-finite
    /// entries, a non-unitary matrix passed as a unitary, an incomplete
    /// Kraus family, a probability outside `[0, 1]`.
    #[error("{op}: validation error: {details}")]
    Validation { op: &'static str, details: String },

    /// An operator file that cannot be parsed into a matrix.
    #[error("{op}: parse error: {details}")]
    Parse { op: &'static str, details: String },
}

impl Error {
    pub fn dim(op: &'static str, details: impl Into<String>) -> Self {
        Error::Dimension { op, details: details.into() }
    }

    pub fn structure(op: &'static str, details: impl Into<String>) -> Self {
        Error::Structure { op, details: details.into() }
    }

    pub fn validation(op: &'static str, details: impl Into<String>) -> Self {
        Error::Validation { op, details: details.into() }
    }

    pub fn parse(op: &'static str, details: impl Into<String>) -> Self {
        Error::Parse { op, details: details.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
