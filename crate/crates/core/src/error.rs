// SPDX-License-Identifier: MIT OR Apache-2.0

use thiserror::Error;

/// Errors raised by the estimation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChestError {
    /// A parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// The input data does not match what the parameters describe.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A declarative description (spec or config) violates its invariants.
    #[error("validation failed: {0}")]
    Validation(String),
    /// Reading or writing a file failed.
    #[error("i/o error: {0}")]
    Io(String),
}

impl ChestError {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Self::InvalidParameter(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Self::InvalidInput(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Self::Validation(msg.into())
    }

    pub(crate) fn io(msg: impl Into<String>) -> Self {
        Self::Io(msg.into())
    }
}

pub type Result<T, E = ChestError> = std::result::Result<T, E>;
