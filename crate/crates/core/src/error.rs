use thiserror::Error;

use crate::poly::Symbol;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no value given for symbol `{0}`")]
    MissingSymbol(Symbol),

    #[error("index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("a pairwise diagonal needs two distinct indices, got ({0}, {0})")]
    DegenerateDiagonal(usize),

    #[error("classes live on different powers C^{left} and C^{right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("{op} needs n >= {min}, got n = {n}")]
    AmbientTooSmall {
        op: &'static str,
        n: usize,
        min: usize,
    },

    #[error("n = {n} exceeds the ambient cap {cap}")]
    AmbientTooLarge { n: usize, cap: usize },

    #[error("rank must be positive, got {0}")]
    NonPositiveRank(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("exponent n-{k} is negative for n = {n}")]
    NegativeExponent { n: usize, k: u32 },

    #[error("division is only defined by a non-zero constant")]
    InvalidDivisor,

    #[error("expected a scalar expression, found a class")]
    ExpectedScalar,
}
