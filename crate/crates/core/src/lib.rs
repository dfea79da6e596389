//! Exact invariants of degenerating curves.
//!
//! Everything here is computed from combinatorial input: labelled dual graphs
//! of sncd models, resolution configurations of surface singularities,
//! ramification filtrations and branch data of Galois covers. All arithmetic
//! is exact over arbitrary-precision rationals.
//!
//! ```
//! use conductor_core::dualgraph::{kodaira_catalog, KodairaLabel};
//! use conductor_core::singularity::{tame_cyclic, CyclicSingularity};
//! use conductor_core::tame::c_tame;
//! use conductor_core::Rational;
//!
//! let iv = kodaira_catalog(KodairaLabel::IV).unwrap();
//! assert_eq!(c_tame(&iv).unwrap(), Rational::new(1, 3));
//!
//! let q = tame_cyclic(&CyclicSingularity::new(6, 1).unwrap()).unwrap();
//! assert_eq!(q.mu_closed, Rational::new(-5, 3));
//! ```
//!
//! The crate is `no_std` and only needs `alloc`. File formats, batch
//! processing and the command line live in the `conductor-lab` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cover;
pub mod dualgraph;
pub mod exactmath;
pub mod ramification;
pub mod singularity;
pub mod tame;

pub use exactmath::Rational;
