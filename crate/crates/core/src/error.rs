use thiserror::Error;

/// Every failure the toolkit can report.
///
/// The `Display` form always starts with the variant name so that the CLI
/// diagnostic names the error kind.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NotAPermutation: {0}")]
    NotAPermutation(String),

    #[error("NotDistinct: {0}")]
    NotDistinct(String),

    #[error("NoOccurrence: the sequence contains no 321 pattern")]
    NoOccurrence,

    #[error("MultipleOccurrences: the sequence contains more than one 321 pattern")]
    MultipleOccurrences,

    #[error("NoUnique321: expected exactly one 321 occurrence, found {found}")]
    NoUnique321 { found: String },

    #[error("ConstraintViolation: {0}")]
    ConstraintViolation(String),

    #[error("InternalConstraintViolation: {0}")]
    InternalConstraintViolation(String),

    #[error("CapExceeded: size {n} exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("InvalidB: b = {0} but b must be at least 2")]
    InvalidB(usize),

    #[error("InvalidRange: need 2 <= b <= n-1, got b = {b}, n = {n}")]
    InvalidRange { b: usize, n: usize },

    #[error("InvalidN: {0}")]
    InvalidN(String),

    #[error("NonIntegerResult: 3*binom(2n, n+3) is not divisible by n = {0}")]
    NonIntegerResult(u64),

    #[error("ParseError: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
