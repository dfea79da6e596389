//! Base change conductors of Jacobians with potential good reduction,
//! computed from the branch data of a Galois cover of special fibers.

mod data;
mod engines;
mod formula;

pub use data::{
    ds_validate, rh_validate, CoverRef, Diagnostic, DsReport, OrdinaryData, TameBranch,
    TameCoverData, WildBranch, WildCoverData,
};
pub use engines::{
    bcc_tame_good, bcc_wild_weak, elliptic_nu_p3, swan_curve_keyiden, ConductorReport, Term,
};
pub use formula::{bcc_formula_eval, FormulaTerms, FormulaVariant};

use alloc::vec::Vec;
use thiserror::Error;

use crate::exactmath::Rational;
use crate::singularity::SingularityError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("invalid cover data: {0}")]
    Invalid(&'static str),
    #[error("Riemann-Hurwitz check failed ({} diagnostics)", .0.len())]
    RhMismatch(Vec<Diagnostic>),
    #[error("Swan conductor of the curve came out negative: {0}")]
    NegativeSwan(Rational),
    #[error("no branch point with full stabilizer")]
    NoFullStabilizerPoint,
    #[error("Deuring-Shafarevich check needs ordinary data")]
    MissingOrdinaryData,
    #[error("g < g_bar gives unipotent rank {0}")]
    NegativeUnipotentRank(i64),
    #[error("conductor came out negative: {0}")]
    NegativeConductor(Rational),
    #[error("missing term {0}")]
    MissingTerm(&'static str),
    #[error(transparent)]
    Singularity(#[from] SingularityError),
}
