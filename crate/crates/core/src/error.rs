use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u32),

    #[error("enumeration exceeded the cap of {cap} elements")]
    EnumerationCap { cap: usize },

    #[error("generator not in the claimed group: {0}")]
    NotInGroup(String),

    #[error("enumerated order {found} does not match the expected order {expected}")]
    OrderMismatch { expected: u64, found: u64 },

    #[error("eigenvalue cluster of size {size} did not split after {retries} retries")]
    Degenerate { size: usize, retries: usize },

    #[error("character table check failed: {what} residual {residual:e}")]
    Orthogonality { what: &'static str, residual: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("tolerance failure in {check}: lhs {lhs}, rhs {rhs}")]
    Tolerance { check: String, lhs: f64, rhs: f64 },

    #[error("the trivial group has no nontrivial irreducible representation")]
    TrivialGroup,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
