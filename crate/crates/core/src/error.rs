use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator {den} is not invertible modulo {p}")]
    NonInvertibleDenominator { den: String, p: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {n} is too small (minimum {min})")]
    DimensionTooSmall { n: usize, min: usize },
    #[error("dimension {n} is too large (maximum {max})")]
    DimensionTooLarge { n: usize, max: usize },
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("field {field} is too small for identity testing in dimension {n} (need p > {bound})")]
    FieldTooSmall { field: String, n: usize, bound: usize },
    #[error("orbit enumeration refused: {0}")]
    EnumerationTooLarge(String),
    #[error("polynomial is not a single nonzero monomial")]
    NotAMonomial,
    #[error("bad indices: {0}")]
    BadIndices(String),
    #[error("the given vectors do not span an ideal: {0}")]
    NotAnIdeal(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("certificate rejected: {0}")]
    CertificateRejected(String),
    #[error("parse error in {field}: {message}")]
    Parse { field: String, message: String },
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
