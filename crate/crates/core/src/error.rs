use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("resource limit exceeded (budget {budget})")]
    ResourceLimit { budget: usize },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("coefficient field has no square root of -1")]
    NoSqrtMinusOne,

    #[error("variable `{0}` already exists in the ring")]
    VariableClash(String),

    #[error("matrix entries are not univariate")]
    NotUnivariate,

    #[error("invalid matrix representation: {0}")]
    InvalidRepresentation(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}
