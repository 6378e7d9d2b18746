use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("pole: denominator {denominator} vanishes at u = {at}")]
    Pole { denominator: String, at: String },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("index {index} out of range for {what} (n = {n})")]
    IndexOutOfRange { what: String, index: usize, n: usize },

    #[error("generator {generator} does not belong to {algebra}")]
    UnknownGenerator { generator: String, algebra: String },

    #[error("algebra mismatch: {left} vs {right}")]
    AlgebraMismatch { left: String, right: String },

    #[error("{0} requires u to be invertible")]
    NeedsInvertibleU(String),

    #[error("{0} is not invertible")]
    NotInvertible(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
