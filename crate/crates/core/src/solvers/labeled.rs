use std::collections::BTreeMap;

use serde::Serialize;

use super::matching::max_matching_general;
use super::SolverError;
use crate::graph::{Graph, SplitPartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LabeledEdge {
    pub u: usize,
    pub v: usize,
    /// Least-id clique vertex adjacent to both ends.
    pub label: usize,
}

/// Auxiliary graph on the independent side: `uv` is an edge iff `u` and `v`
/// have a common clique neighbour.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledGraph {
    pub vertices: Vec<usize>,
    #[serde(rename = "labeledEdges")]
    pub edges: Vec<LabeledEdge>,
}

/// Labeled graph of `h` with respect to `p`; requires `Δ^I <= 2`.
pub fn build_labeled_graph(h: &Graph, p: &SplitPartition) -> Result<LabeledGraph, SolverError> {
    SplitPartition::new(h, p.clique(), p.independent())?;
    if p.delta_i() > 2 {
        return Err(SolverError::DeltaI { expected: "at most 2", got: p.delta_i() });
    }
    Ok(labeled_graph_on(h, p.clique(), p.independent()))
}

/// Labeled graph for clique `clique` and the independent vertices `active`
/// (other vertices are treated as deleted). Each clique vertex is assumed
/// to have at most two active neighbours.
pub(crate) fn labeled_graph_on(g: &Graph, clique: &[usize], active: &[usize]) -> LabeledGraph {
    let mut is_active = vec![false; g.n()];
    for &v in active {
        is_active[v] = true;
    }
    let mut edges: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &c in clique {
        let nb: Vec<usize> = g.neighbors(c).iter().copied().filter(|&w| is_active[w]).collect();
        for (i, &u) in nb.iter().enumerate() {
            for &v in &nb[i + 1..] {
                let label = edges.entry((u, v)).or_insert(c);
                *label = (*label).min(c);
            }
        }
    }
    let mut vertices = active.to_vec();
    vertices.sort_unstable();
    LabeledGraph { vertices, edges: edges.into_iter().map(|((u, v), label)| LabeledEdge { u, v, label }).collect() }
}

/// Maximum matching of the labeled graph, as labeled edges sorted by `u`.
pub fn max_matching(m: &LabeledGraph) -> Vec<LabeledEdge> {
    let index: BTreeMap<usize, usize> = m.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![Vec::new(); m.vertices.len()];
    for e in &m.edges {
        let (a, b) = (index[&e.u], index[&e.v]);
        adj[a].push(b);
        adj[b].push(a);
    }
    let mate = max_matching_general(&adj);
    let mut out: Vec<LabeledEdge> = m
        .edges
        .iter()
        .filter(|e| mate[index[&e.u]] == Some(index[&e.v]))
        .copied()
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        // c1=0 ~ {y1=2, y2=3}, c2=1 ~ {y2=3, y3=4}; c3=5 keeps the clique maximal.
        let g = Graph::from_edges(6, [(0, 1), (0, 5), (1, 5), (0, 2), (0, 3), (1, 3), (1, 4)]).unwrap();
        let p = SplitPartition::new(&g, &[0, 1, 5], &[2, 3, 4]).unwrap();
        let m = build_labeled_graph(&g, &p).unwrap();
        assert_eq!(m.edges, vec![LabeledEdge { u: 2, v: 3, label: 0 }, LabeledEdge { u: 3, v: 4, label: 1 }]);
        assert_eq!(max_matching(&m).len(), 1);
        // Disjoint neighbourhoods.
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 3)]).unwrap();
        let p = SplitPartition::new(&g, &[0, 1], &[2, 3]).unwrap();
        assert!(build_labeled_graph(&g, &p).unwrap().edges.is_empty());
    }

    #[test]
    fn p4_shaped_labeled_graph() {
        let m = LabeledGraph {
            vertices: vec![0, 1, 2, 3],
            edges: vec![
                LabeledEdge { u: 0, v: 1, label: 10 },
                LabeledEdge { u: 1, v: 2, label: 11 },
                LabeledEdge { u: 2, v: 3, label: 12 },
            ],
        };
        let mm = max_matching(&m);
        assert_eq!(mm.len(), 2);
        assert_eq!(mm[0].label, 10);
        assert_eq!(mm[1].label, 12);
    }
}
