use thiserror::Error;

/// Failures of the eventually-periodic sequence algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("common period {needed} exceeds the configured limit {limit}")]
    PeriodLimit { needed: u128, limit: usize },
    #[error("sequence is not finitely supported")]
    NotFinitelySupported,
    #[error("mask is not 0-1 valued")]
    MaskNotBinary,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Rejections of an input document, each carrying where the problem is.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("{location}: zero row (the matrix must have no identically zero rows)")]
    ZeroRow { location: String },
    #[error("{location}: entry {value} is not 0 or 1")]
    NonBinary { location: String, value: String },
    #[error("{location}: class index {value} out of range for {patterns} patterns")]
    ClassOutOfRange {
        location: String,
        value: String,
        patterns: usize,
    },
    #[error("patterns {first} and {second} are equal (presentation must be reduced)")]
    DuplicatePattern { first: usize, second: usize },
    #[error("pattern {0} is never used by the classmap (presentation must be reduced)")]
    UnusedPattern(usize),
    #[error("{location}: {message}")]
    Shape { location: String, message: String },
}

/// Crate-level error; the variant decides the CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error("guard exceeded: {0}")]
    Guard(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invalid(_) => 1,
            Error::Guard(_) => 2,
            Error::Internal(_) => 3,
        }
    }
}

impl From<SeqError> for Error {
    fn from(e: SeqError) -> Self {
        match e {
            SeqError::PeriodLimit { .. } => Error::Guard(e.to_string()),
            SeqError::EmptyPeriod => Error::Invalid(ValidationError::Syntax(e.to_string())),
            other => Error::Internal(other.to_string()),
        }
    }
}

impl From<LinalgError> for Error {
    fn from(e: LinalgError) -> Self {
        Error::Internal(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
