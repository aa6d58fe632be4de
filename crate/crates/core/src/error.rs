use thiserror::Error;

/// Errors raised by the exact and floating-point backends.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,

    #[error("denominator vanishes at x = {point}")]
    PoleAtPoint { point: String },

    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is singular (rank {rank} < {dim})")]
    SingularMatrix { rank: usize, dim: usize },

    #[error("input is not positive semidefinite (pivot column {column})")]
    NotPsd { column: usize },

    #[error("helper product has rank zero; no generalized inverse of rank s >= 1 exists")]
    RankZero,

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("division by the zero polynomial at byte {position}")]
    Pole { position: usize },

    #[error("line {line}: expected {expected} cells, found {found}")]
    Shape {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("unknown test-matrix family `{0}`")]
    UnknownFamily(String),

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("left and right Moore-Penrose routes disagree")]
    InconsistentRoutes,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
