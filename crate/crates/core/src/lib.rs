//! Guarding graphs against infinite sequences of attacks.

pub mod generators;
pub mod graph;
pub mod oracle;
pub mod reductions;
pub mod solvers;
pub mod strategy;

pub use graph::{Graph, GraphError};
