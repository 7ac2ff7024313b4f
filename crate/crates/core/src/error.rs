use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("p must be at least 2, got {0}")]
    InvalidP(i64),
    #[error("operands belong to different algebras (p = {0} and p = {1})")]
    MismatchedP(u32, u32),
    #[error("division by zero in Q(q)")]
    DivisionByZero,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("singular linear system: {0}")]
    Singular(String),
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
