//! Dense exact linear algebra, generic over the coefficient domain.

mod elim;
mod forms;
mod matrix;

pub use elim::{det, det_field, free_columns, inverse, nullspace, rank, rref, solve, IncrementalBasis, Rref};
pub use forms::{
    intertwiner_space, signature_of_diagonal, solve_conjugator, solve_invariant_forms, HermitianForm,
    InvariantForms, RealSign,
};
pub use matrix::ExactMatrix;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is {rows}×{cols}, not square")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("rows have different lengths")]
    Ragged,
    #[error("matrix is not diagonal")]
    NonDiagonal,
    #[error("diagonal entry {0} is zero")]
    ZeroDiagonalEntry(usize),
    #[error("matrix is not sesqui-symmetric under its involution")]
    NotHermitian,
}

/// Right nullspace basis; alias kept for the operation's published name.
pub fn solve_nullspace<E>(a: &ExactMatrix<E>) -> Vec<Vec<E>>
where
    E: crate::ring::Field + Send + Sync,
{
    nullspace(a)
}
