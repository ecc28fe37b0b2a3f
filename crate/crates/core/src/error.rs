use thiserror::Error;

/// Everything that can go wrong inside `segre-core`.
///
/// The variants are grouped loosely by the caller's likely reaction: malformed
/// input, unsupported field kinds, degenerate geometry, and failed checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is a zero divisor in a non-field quotient ring")]
    ZeroDivisor,
    #[error("zero has no square class")]
    ZeroElement,
    #[error("factorization budget exceeded for {0}")]
    FactorizationBudget(String),
    #[error("inexact division: nonzero remainder")]
    InexactDivision,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(usize),
    #[error("line not on hypersurface")]
    LineNotOnHypersurface,
    #[error("span has rank < 2")]
    DegenerateSpan,
    #[error("non-simple line: det A = 0")]
    NonSimpleLine,
    #[error("non-generic Gauß curve: {0}")]
    NonGenericGaussCurve(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
