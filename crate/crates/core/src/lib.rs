//! Majority Roman domination on small graphs: exact solvers, graph family
//! generators, proof-certificate labelings, closed-form values and bounds,
//! and a harness that cross-checks them instance by instance.

pub mod certificates;
pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod family;
pub mod graph;
pub mod harness;
pub mod mrdf;
pub mod solver;
pub mod tree;

pub use error::{Error, Result};
pub use family::GraphSpec;
pub use graph::Graph;
pub use mrdf::{Label, Labeling, ThresholdMode, ValidationReport};
pub use solver::{Method, OptResult, SolveOptions};
