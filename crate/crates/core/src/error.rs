use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    Field(String),

    #[error("division by zero in the field")]
    DivisionByZero,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("field mismatch between operands")]
    FieldMismatch,

    #[error("group mismatch between operands")]
    GroupMismatch,

    #[error("cap exceeded: {0}")]
    Cap(String),

    #[error("invalid group: {0}")]
    Group(String),

    #[error("invalid representation: {0}")]
    Rep(String),

    #[error("form is not G-invariant; witness vector {witness:?}")]
    NotInvariant { generator: usize, witness: Vec<u16> },

    #[error("form is degenerate; radical vector {witness:?}")]
    Degenerate { witness: Vec<u16> },

    #[error("matrix is not an isometry; witness vector {witness:?}")]
    NotIsometry { witness: Vec<u16> },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("meataxe gave up after {0} random samples")]
    MeataxeBudget(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
