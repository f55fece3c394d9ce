use thiserror::Error;

pub type Result<T, E = TensorError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TensorError {
    #[error("invalid shape {m}x{n}x{p}: all dimensions must be positive and p >= 2")]
    InvalidShape { m: usize, n: usize, p: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("entry at index {index} is not finite")]
    NonFinite { index: usize },

    #[error("matrix is not block circulant (residual {residual:e} > tolerance {tol:e})")]
    NotCirculant { residual: f64, tol: f64 },

    #[error(
        "spectral blocks are not conjugate symmetric (residual {residual:e} > tolerance {tol:e})"
    )]
    NotConjugateSymmetric { residual: f64, tol: f64 },

    #[error("tensor is not f-diagonal (off-diagonal entry {value:e} at i={i}, j={j}, k={k})")]
    NotFDiagonal {
        value: f64,
        i: usize,
        j: usize,
        k: usize,
    },

    #[error("tensor is not orthogonal (residual {residual:e} > tolerance {tol:e})")]
    NotOrthogonal { residual: f64, tol: f64 },

    #[error("rank {r} out of range 0..={max}")]
    RankOutOfRange { r: usize, max: usize },

    #[error("index pair ({i}, {j}) out of range for {m}x{n} slices")]
    IndexOutOfRange {
        i: usize,
        j: usize,
        m: usize,
        n: usize,
    },

    #[error("{given} pairs given but at most {max} allowed")]
    TooManyPairs { given: usize, max: usize },

    #[error("duplicate index pair ({i}, {j})")]
    DuplicatePair { i: usize, j: usize },

    #[error("this check requires p = {expected}, got p = {actual}")]
    WrongP { expected: usize, actual: usize },

    #[error("negative weight {weight} at position {index}")]
    NegativeWeight { index: usize, weight: f64 },

    #[error("cone combination needs at least one tensor")]
    EmptyCombination,

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}
