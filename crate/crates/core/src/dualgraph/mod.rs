//! Labelled dual graphs of sncd models and their invariants.

mod graph;
mod kodaira;

pub use graph::{
    euler_after_resolution, invariants, validate, Component, Diagnostic, GraphError, GraphFlags,
    GraphInvariants, SncdGraph,
};
pub use kodaira::{kodaira_catalog, KodairaLabel, UnknownType};
