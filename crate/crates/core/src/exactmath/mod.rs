//! Exact rational arithmetic, Jung-Hirzebruch continued fractions and exact
//! solving of symmetric systems.

mod hj;
mod linalg;
mod rational;

pub use hj::{hj_eval, hj_expand, inverse_mod, HJExpansion};
pub use linalg::{
    check_neg_semidefinite, neg_semidefinite_rank, solve_definite, SemidefiniteReport, SolveMode, SolveOutcome,
    SymMatrix,
};
pub use rational::{ParseRationalError, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("continued fraction needs at least one term")]
    EmptyExpansion,
    #[error("matrix is singular or not negative definite")]
    SingularMatrix,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
}
