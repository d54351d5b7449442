//! Constructed graph families (`GP_2`, `GP_3`, `GP_5`) with their closed-form
//! predictions, and the gadget graphs of the two hardness reductions.

mod gp;
mod three_dm;
mod x3c;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::oracle::OracleError;

pub use gp::{
    build_gp2, build_gp3, build_gp5, test_gp2_conjecture, test_gp3_eternal_correspondence,
    test_gp5_domination_correspondence, Gp2ConjectureReport, Gp3EternalReport, Gp5DominationReport,
};
pub use three_dm::{perfect_3d_matchings, reduce_3dm, ThreeDMInstance, ThreeDMLayout, GADGET_ROLES};
pub use x3c::{exact_covers, reduce_x3c, X3CInstance, X3CLayout};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("clique tree check failed: {0}")]
    PathProperty(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A built graph with a role tag per vertex and the values the construction
/// predicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConstructedGraph {
    pub graph: Graph,
    /// `vertex_roles[v]` names the construction vertex `v` stands for.
    pub vertex_roles: Vec<String>,
    pub predictions: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ConstructedGraph {
    fn new(graph: Graph, vertex_roles: Vec<String>) -> Self {
        debug_assert_eq!(graph.n(), vertex_roles.len());
        let mut predictions = BTreeMap::new();
        predictions.insert("vertices".to_string(), graph.n());
        predictions.insert("edges".to_string(), graph.edge_count());
        ConstructedGraph { graph, vertex_roles, predictions, warnings: Vec::new() }
    }

    fn predict(&mut self, name: &str, value: usize) {
        self.predictions.insert(name.to_string(), value);
    }

    /// Vertex carrying role `role`, if any.
    pub fn vertex(&self, role: &str) -> Option<usize> {
        self.vertex_roles.iter().position(|r| r == role)
    }
}
