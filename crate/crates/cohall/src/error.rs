//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HallError {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operation requires a symmetric quiver: a[{i}][{j}] = {aij} but a[{j}][{i}] = {aji}")]
    SymmetryRequired { i: usize, j: usize, aij: u32, aji: u32 },

    #[error("exact division failed: {0}")]
    NotDivisible(String),

    #[error("series has zero constant term and is not invertible")]
    NotInvertible,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("grade ({0}) outside the declared module grade range")]
    GradeOutOfRange(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, HallError>;

impl HallError {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        HallError::Parse { line, col, msg: msg.into() }
    }
}
