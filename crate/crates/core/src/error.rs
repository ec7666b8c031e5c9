use thiserror::Error;

/// Errors raised by the library. The CLI maps every variant to exit code 2
/// except the verification failures, which are reported as data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("radicand {0} is a square in the base field")]
    RadicandIsSquare(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field of size {0} exceeds the supported table size")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator is not a unit at T = 0; series expansion undefined")]
    NonUnitDenominator,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("endomorphism is not nilpotent")]
    NotNilpotent,
    #[error("bad composition: {0}")]
    BadComposition(String),
    #[error("support violation: {0}")]
    SupportViolation(String),
    #[error("no certified sample after {attempts} attempts")]
    GenericityFailure { attempts: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("enumeration of {required} elements exceeds budget {budget}; use sampling mode")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
