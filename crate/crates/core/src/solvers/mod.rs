//! Polynomial-time m-eternal domination numbers of `K_{1,3}`-free and
//! `K_{1,4}`-free split graphs, and a dispatcher over the split-graph cases.

mod labeled;
mod matching;
mod three_split;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{
    claw_free_split_check, is_k1t_free, k14_free_3split_check, split_partition, Graph, GraphError, SplitPartition,
};
use crate::oracle::{medn_oracle, Budget, OracleError};

pub use labeled::{build_labeled_graph, max_matching, LabeledEdge, LabeledGraph};
pub use matching::{matching_size, max_matching_general};
pub use three_split::{build_q, classify_q, solve_k14_3split, solve_k14_3split_at, BipartiteQ, QClass, ThreeSplitAnalysis};

pub(crate) use labeled::labeled_graph_on;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("not a split graph")]
    NotSplit,
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is complete")]
    Complete,
    #[error("graph is not claw-free")]
    NotClawFree,
    #[error("graph is not K_{{1,4}}-free")]
    NotK14Free,
    #[error("expected Δ^I {expected}, got {got}")]
    DeltaI { expected: &'static str, got: usize },
    #[error("vertex {x} has {got} independent neighbours, expected 3")]
    NotThreeNeighbors { x: usize, got: usize },
    /// A property the construction relies on failed on this input.
    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

fn require_connected(g: &Graph) -> Result<(), SolverError> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(SolverError::Disconnected)
    }
}

fn require_valid(g: &Graph, p: &SplitPartition) -> Result<(), SolverError> {
    SplitPartition::new(g, p.clique(), p.independent())?;
    Ok(())
}

/// `γ_m^∞` of a connected claw-free split graph: `|I| + 1` when some clique
/// vertex has no independent neighbour, else `|I|`.
///
/// Stars are not rejected: the only claw-free star that is not complete is
/// `P_3`, where the formula is correct.
pub fn solve_k13_free(g: &Graph, p: &SplitPartition) -> Result<usize, SolverError> {
    require_valid(g, p)?;
    require_connected(g)?;
    if g.is_complete() {
        return Err(SolverError::Complete);
    }
    if !claw_free_split_check(g, p)? {
        return Err(SolverError::NotClawFree);
    }
    let covered = p.independent_covers_clique();
    Ok(p.independent().len() + usize::from(!covered))
}

/// The labeled-matching reduction: match the labeled graph, keep the labels
/// `L`, delete their independent neighbours and keep the rest as `I'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReducedInstance {
    pub matching: Vec<LabeledEdge>,
    #[serde(rename = "L")]
    pub l: Vec<usize>,
    /// `N^Î(L)`, the independent vertices deleted by the reduction.
    pub removed: Vec<usize>,
    #[serde(rename = "Iprime")]
    pub i_prime: Vec<usize>,
    /// `H'` induced on the clique and `I'`; `vertex_map[i]` is the original
    /// id of vertex `i`.
    pub reduced_graph: Graph,
    pub vertex_map: Vec<usize>,
    /// Largest number of `I'`-neighbours of a clique vertex in `H'`.
    pub delta_i_prime: usize,
}

pub(crate) fn reduce_instance(g: &Graph, clique: &[usize], active: &[usize]) -> ReducedInstance {
    let lab = labeled_graph_on(g, clique, active);
    let matching = max_matching(&lab);
    let mut l: Vec<usize> = matching.iter().map(|e| e.label).collect();
    l.sort_unstable();
    let mut removed: Vec<usize> = matching.iter().flat_map(|e| [e.u, e.v]).collect();
    // Each label has exactly the two matched vertices as active neighbours.
    removed.sort_unstable();
    let i_prime: Vec<usize> = active.iter().copied().filter(|v| removed.binary_search(v).is_err()).collect();
    let mut keep: Vec<usize> = clique.iter().chain(&i_prime).copied().collect();
    keep.sort_unstable();
    let (reduced_graph, vertex_map) = g.induced_subgraph(&keep).expect("valid vertex set");
    let delta_i_prime = clique
        .iter()
        .map(|&c| g.neighbors(c).iter().filter(|w| i_prime.binary_search(w).is_ok()).count())
        .max()
        .unwrap_or(0);
    ReducedInstance { matching, l, removed, i_prime, reduced_graph, vertex_map, delta_i_prime }
}

/// `γ_m^∞` of a connected `K_{1,4}`-free 2-split graph: `|L| + |I'| + 1`.
pub fn solve_k14_2split(h: &Graph, p: &SplitPartition) -> Result<(usize, ReducedInstance), SolverError> {
    require_valid(h, p)?;
    require_connected(h)?;
    if p.delta_i() != 2 {
        return Err(SolverError::DeltaI { expected: "2", got: p.delta_i() });
    }
    if !is_k1t_free(h, 4) {
        return Err(SolverError::NotK14Free);
    }
    let red = reduce_instance(h, p.clique(), p.independent());
    if red.delta_i_prime > 1 {
        return Err(SolverError::Inconsistency(format!(
            "reduced graph has Δ^I' = {} after a maximum matching",
            red.delta_i_prime
        )));
    }
    Ok((red.l.len() + red.i_prime.len() + 1, red))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "complete")]
    Complete,
    #[serde(rename = "star")]
    Star,
    #[serde(rename = "k13")]
    K13,
    #[serde(rename = "k14-2")]
    K14TwoSplit,
    #[serde(rename = "k14-3")]
    K14ThreeSplit,
    #[serde(rename = "oracle-fallback")]
    OracleFallback,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Complete => "complete",
            Method::Star => "star",
            Method::K13 => "k13",
            Method::K14TwoSplit => "k14-2",
            Method::K14ThreeSplit => "k14-3",
            Method::OracleFallback => "oracle-fallback",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which solver applies to a connected split graph.
pub fn choose_method(g: &Graph, p: &SplitPartition) -> Result<Method, SolverError> {
    require_connected(g)?;
    if g.is_complete() {
        return Ok(Method::Complete);
    }
    if g.is_star() {
        return Ok(Method::Star);
    }
    Ok(match p.delta_i() {
        0 | 1 => Method::K13,
        2 if claw_free_split_check(g, p)? => Method::K13,
        // Every 2-split graph is K_{1,4}-free.
        2 => Method::K14TwoSplit,
        3 if k14_free_3split_check(g, p)? => Method::K14ThreeSplit,
        _ => Method::OracleFallback,
    })
}

/// `γ_m^∞` of a connected split graph with the method used. Inputs outside
/// the polynomial classes go to the exact oracle.
pub fn solve_split_auto(g: &Graph, budget: &mut Budget) -> Result<(usize, Method), SolverError> {
    let p = split_partition(g).ok_or(SolverError::NotSplit)?;
    let method = choose_method(g, &p)?;
    let value = match method {
        Method::Complete => 1,
        Method::Star => 2,
        Method::K13 => solve_k13_free(g, &p)?,
        Method::K14TwoSplit => solve_k14_2split(g, &p)?.0,
        Method::K14ThreeSplit => solve_k14_3split(g, &p)?.0,
        Method::OracleFallback => medn_oracle(g, budget)?,
    };
    Ok((value, method))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k13_examples() {
        let p3 = Graph::path(3);
        assert_eq!(solve_k13_free(&p3, &split_partition(&p3).unwrap()), Ok(2));
        let p4 = Graph::path(4);
        assert_eq!(solve_k13_free(&p4, &split_partition(&p4).unwrap()), Ok(2));
        let sun = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (4, 1), (4, 2), (5, 0), (5, 2)]).unwrap();
        assert_eq!(solve_k13_free(&sun, &split_partition(&sun).unwrap()), Ok(3));
        let k4 = Graph::complete(4);
        assert_eq!(solve_k13_free(&k4, &split_partition(&k4).unwrap()), Err(SolverError::Complete));
    }

    #[test]
    fn two_split_examples() {
        // Clique 0,1,2; 0 ~ {3,4}, 1 ~ {5,6}.
        let g = Graph::from_edges(7, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (1, 5), (1, 6)]).unwrap();
        let (v, red) = solve_k14_2split(&g, &split_partition(&g).unwrap()).unwrap();
        assert_eq!((v, red.l.clone(), red.i_prime.len()), (3, vec![0, 1], 0));
        // Clique 0,1,5; 0 ~ {2,3}, 1 ~ {3,4}.
        let g = Graph::from_edges(6, [(0, 1), (0, 5), (1, 5), (0, 2), (0, 3), (1, 3), (1, 4)]).unwrap();
        let (v, red) = solve_k14_2split(&g, &split_partition(&g).unwrap()).unwrap();
        assert_eq!((v, red.l.len(), red.i_prime.len()), (3, 1, 1));
        // Clique 0,1; 0 ~ {2,3}.
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let p = SplitPartition::new(&g, &[0, 1], &[2, 3]).unwrap();
        assert_eq!(solve_k14_2split(&g, &p).unwrap().0, 2);
    }

    #[test]
    fn auto_examples() {
        let mut b = Budget::default();
        assert_eq!(solve_split_auto(&Graph::complete(6), &mut b), Ok((1, Method::Complete)));
        assert_eq!(solve_split_auto(&Graph::path(4), &mut b), Ok((2, Method::K13)));
        assert_eq!(solve_split_auto(&Graph::star(5), &mut b), Ok((2, Method::Star)));
        assert_eq!(solve_split_auto(&Graph::cycle(4), &mut b), Err(SolverError::NotSplit));
    }
}
