//! Milnor and discrepancy numbers of normal surface singularities.
//!
//! The adjunction solver in [`resolution`] is authoritative: the discrepancy
//! divisor is defined by `Gamma . E_i = 2 g_i - 2 - E_i^2`, and every closed
//! form in [`cyclic`] and [`wild`] is checked against it.

pub mod cyclic;
pub mod resolution;
pub mod wild;

pub use cyclic::{closed_form_discrepancy, p_sequence, tame_cyclic, CyclicSingularity, PConvention, TameCyclic};
pub use resolution::{discrepancy_solve, milnor_nu, Discrepancy, MilnorNu, ResolutionDatum};
pub use wild::{
    discover_wild_charts, p_cyclic_wild_chart, weak_wild_milnor, ChartCandidate, PCyclicWildChart,
    WeakWildSingularity,
};

use thiserror::Error;

use crate::exactmath::MathError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularityError {
    #[error("intersection matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("{0}")]
    BadDatum(&'static str),
    #[error("p_g is required unless the singularity is flagged rational")]
    MissingPg,
    #[error("a rational singularity has p_g = 0, got {0}")]
    RationalWithPg(u64),
    #[error("residues must lie in 1..{p} and be prime to it")]
    BadResidues { p: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error(transparent)]
    Math(#[from] MathError),
}
