use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weights must be a nonempty sequence")]
    EmptyWeights,
    #[error("weight {value} at position {index} is not positive")]
    NonPositiveWeight { index: usize, value: i64 },
    #[error("weights must be in decreasing order (position {index}: {prev} < {next})")]
    NotDecreasing { index: usize, prev: i64, next: i64 },
    #[error("matrix entry ({row}, {col}) has weighted degree {found}, expected {expected}")]
    DegreeMismatch {
        row: usize,
        col: usize,
        expected: i64,
        found: i64,
    },
    #[error("entry ({row}, {col}) is not weighted-homogeneous")]
    NotHomogeneous { row: usize, col: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("maps do not compose to zero")]
    NotAComplex,
    #[error("prime {0} divides a denominator")]
    BadPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid monad: {0}")]
    InvalidMonad(String),
    #[error("operation requires dimension at least {required}, got {found}")]
    DimensionTooSmall { required: usize, found: usize },
    #[error("restriction to x{index} = 0 is not a monad: {reason}")]
    RestrictionNotMonad { index: usize, reason: String },
    #[error("variable index {index} out of range for {vars} variables")]
    IndexOutOfRange { index: usize, vars: usize },
    #[error("no certification window found within {cap} degrees ({what})")]
    WindowExceeded { what: String, cap: i64 },
    #[error("no wregular twist found at or above m = {0}")]
    NoWregularTwist(i64),
    #[error("search for {what} gave up after {steps} steps")]
    SearchCap { what: String, steps: i64 },
    #[error("classical regularity requires all weights equal to 1")]
    WrongWeights,
    #[error("expression is not a direct sum of line bundles")]
    NotSplit,
    #[error("sub-expressions live on different weighted projective spaces")]
    WeightsMismatch,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
