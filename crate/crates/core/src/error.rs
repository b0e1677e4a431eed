use crate::arith::GaussianInt;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rejection budget exceeded: {accepted} accepted out of {draws} draws")]
    RejectionBudgetExceeded { accepted: usize, draws: usize },
    #[error("digit {digit} is not admissible for {algorithm}")]
    InvalidDigit { algorithm: String, digit: GaussianInt },
    #[error("iteration budget of {budget} exceeded at z = {z}")]
    IterationBudgetExceeded { budget: usize, z: Complex64 },
    #[error("z = {z} lies outside the fundamental set")]
    OutsideDomain { z: Complex64 },
    #[error("zero input")]
    ZeroInput,
    #[error("input point lies on the diagonal")]
    DiagonalInput,
    #[error("formula mismatch for piece {piece}: {detail} (witness {witness})")]
    FormulaMismatch {
        piece: usize,
        detail: String,
        witness: Complex64,
    },
    #[error("cell of digit {digit} meets pieces {pieces:?}")]
    NotMarkov { digit: GaussianInt, pieces: Vec<usize> },
    #[error("refinement budget exhausted after {stages} stages with {pieces} pieces")]
    BudgetExhausted { stages: usize, pieces: usize },
    #[error("system mismatch for piece {piece} (witness {witness})")]
    SystemMismatch { piece: usize, witness: Complex64 },
    #[error("no declared L-sets for {0}")]
    NoDeclaredL(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
