use thiserror::Error;

/// Errors raised by the aggregation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A criterion has no spread (constant column), so it cannot be normalized.
    #[error("criterion {index} ('{label}') is degenerate: all alternatives share the same score")]
    DegenerateCriterion { index: usize, label: String },

    #[error("dimension mismatch for {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid affine map for criterion {index}: slope {slope} must be strictly positive and finite")]
    InvalidAffine { index: usize, slope: f64 },

    #[error("k-ratio denominator is zero: {pc} - {pd}")]
    ZeroDenominator { pc: f64, pd: f64 },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
