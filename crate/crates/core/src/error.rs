use thiserror::Error;

/// Errors raised by ring construction, label handling and the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FusionError {
    #[error("unknown label `{label}` for ring {ring}")]
    UnknownLabel { ring: String, label: String },

    #[error("ring mismatch: operand belongs to {found}, expected {expected}")]
    RingMismatch { expected: String, found: String },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("validation failed: {message} (witness: {witness})")]
    Validation { message: String, witness: String },

    #[error("multiplier evaluation failed at {label}: {reason}")]
    Evaluation { label: String, reason: String },

    #[error("dimension of {label} is irrational and cannot be represented exactly")]
    InexactDimension { label: String },

    #[error("numeric failure: {message} (achieved {achieved:e})")]
    Numeric { message: String, achieved: f64 },

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
}

impl FusionError {
    pub(crate) fn validation(message: impl Into<String>, witness: impl Into<String>) -> Self {
        FusionError::Validation {
            message: message.into(),
            witness: witness.into(),
        }
    }

    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        FusionError::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = FusionError> = std::result::Result<T, E>;
