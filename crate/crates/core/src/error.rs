use num_bigint::BigInt;
use thiserror::Error;

/// Errors produced by the library. Every variant is a domain error: the
/// inputs were well formed but outside an operation's contract.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not prime")]
    NotPrime(BigInt),

    #[error("{0} is not an odd prime")]
    NotOddPrime(BigInt),

    #[error("operands belong to different algebras: {left} vs {right}")]
    ParamsMismatch { left: String, right: String },

    #[error("element has zero norm and is not invertible")]
    ZeroNorm,

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    OutOfDomain(String),

    #[error("search range too large: {0}")]
    SearchTooLarge(String),

    #[error("identity violated: {0}")]
    IdentityViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
