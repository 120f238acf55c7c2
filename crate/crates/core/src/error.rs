use thiserror::Error;

/// Failures surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Arguments fall outside the domain an operation is defined on.
    #[error("{op}: {detail}")]
    Precondition { op: &'static str, detail: String },

    /// A path handed to a transform does not belong to its source family.
    #[error("path not in source family: {0}")]
    InvalidPath(String),

    /// Explicit enumeration refused because the instance is too large.
    #[error("enumeration guard exceeded: {steps} steps (limit {limit})")]
    TooLarge { steps: i64, limit: i64 },

    #[error("zero denominator: {0}")]
    ZeroDenominator(String),

    #[error("cannot parse {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Precondition {
        op,
        detail: detail.into(),
    }
}
