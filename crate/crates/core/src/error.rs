use thiserror::Error;

/// Errors raised across the library.
///
/// Verification outcomes (a pair that is not friendly, a triple that fails
/// a sign check) are reported as values, not as errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero: variable {var} has a negative exponent and is zero at the point")]
    DivisionByZero { var: usize },

    #[error("polynomial division is not exact")]
    NotDivisible,

    #[error("pole at input: linear form {row} vanishes and carries a negative exponent")]
    PoleAtInput { row: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid Horn matrix: {0}")]
    InvalidHornMatrix(String),

    #[error("coefficient vector entry {0} is zero")]
    ZeroCoefficient(usize),

    #[error("column bijection search exceeded its budget ({0} columns)")]
    SearchBudgetExceeded(usize),

    #[error("invalid staged tree: {0}")]
    InvalidTree(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("zero denominator: aggregate count of floret {0} vanishes")]
    ZeroDenominator(usize),

    #[error("florets differ in size ({0} vs {1})")]
    SizeMismatch(usize, usize),

    #[error("graph is not chordal")]
    NotChordal,

    #[error("graph has a directed cycle")]
    CyclicGraph,

    #[error("marked term is not a term of the polynomial")]
    MarkedTermAbsent,

    #[error("the all-ones vector is not in the row span of the left kernel")]
    OnesNotInRowSpan,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
