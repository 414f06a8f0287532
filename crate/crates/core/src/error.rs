use thiserror::Error;

/// Domain and parse errors raised by the evaluators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base must be at least 2, got {0}")]
    BaseTooSmall(String),
    #[error("j = {j} is out of range for base {base} (expected {expected})")]
    JOutOfRange {
        j: String,
        base: String,
        expected: &'static str,
    },
    #[error("{0} is undefined at n = 0")]
    ZeroArgument(&'static str),
    #[error("argument must be at least 1, got {0}")]
    BelowOne(String),
    #[error("digit {digit} is not a valid base-{base} digit")]
    DigitOutOfRange { digit: String, base: String },
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("cannot parse {input:?} as a rational: {reason}")]
    Parse { input: String, reason: &'static str },
    #[error("inexact division of {numerator} by {divisor}")]
    InexactDivision { numerator: String, divisor: String },
    #[error("more than one integral term found at k = {0:?}")]
    MultipleIntegerTerms(Vec<u64>),
    #[error("{0} is too large to materialise")]
    TooLarge(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
