use std::collections::BTreeMap;

use serde::Serialize;

use super::{reduce_instance, require_connected, require_valid, ReducedInstance, SolverError};
use crate::graph::{k14_free_3split_check, Graph, SplitPartition};

/// Bipartite graph between `A = N^I(x)` and `B = L ∪ N_{H'}(I')`, with a
/// weight class per `B` vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartiteQ {
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    #[serde(rename = "B")]
    pub b: Vec<usize>,
    /// `(a, b)` pairs, sorted.
    #[serde(rename = "qEdges")]
    pub edges: Vec<(usize, usize)>,
    pub weight: BTreeMap<usize, usize>,
}

impl BipartiteQ {
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a, b)).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type")]
pub enum QClass {
    /// A matching saturating `A` into pairwise different weight classes,
    /// as `(a, b)` pairs in the order of `A`.
    TypeI { matching: Vec<(usize, usize)> },
    /// `c` adjacent to `a` and `b`, `e` adjacent to `d`, different weights.
    TypeII { a: usize, b: usize, c: usize, d: usize, e: usize },
    Neither,
}

impl QClass {
    pub fn name(&self) -> &'static str {
        match self {
            QClass::TypeI { .. } => "TypeI",
            QClass::TypeII { .. } => "TypeII",
            QClass::Neither => "Neither",
        }
    }
}

/// Everything the 3-split solver computed for one choice of `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ThreeSplitAnalysis {
    pub x: usize,
    /// `Δ^Î` of `H = G - N^I(x)`.
    pub l_split: usize,
    pub reduced: ReducedInstance,
    pub q: BipartiteQ,
    pub class: QClass,
    pub value: usize,
    /// Deviations from side conditions that the value does not depend on.
    pub diagnostics: Vec<String>,
}

struct Pipeline {
    l_split: usize,
    reduced: ReducedInstance,
    q: BipartiteQ,
    diagnostics: Vec<String>,
}

fn pipeline(g: &Graph, p: &SplitPartition, x: usize) -> Result<Pipeline, SolverError> {
    if !p.in_clique(x) || p.d_i(x) != 3 {
        return Err(SolverError::NotThreeNeighbors { x, got: p.d_i(x) });
    }
    let a = p.i_neighbors(x).to_vec();
    let active: Vec<usize> = p.independent().iter().copied().filter(|v| !a.contains(v)).collect();
    let l_split = p
        .clique()
        .iter()
        .map(|&c| g.neighbors(c).iter().filter(|w| active.binary_search(w).is_ok()).count())
        .max()
        .unwrap_or(0);
    if l_split > 2 {
        return Err(SolverError::Inconsistency(format!(
            "removing N^I({x}) leaves a {l_split}-split graph, expected at most 2-split"
        )));
    }
    let reduced = reduce_instance(g, p.clique(), &active);
    let mut diagnostics = Vec::new();
    if reduced.matching.len() > 2 {
        diagnostics.push(format!(
            "labeled graph of G - N^I({x}) has a maximum matching of size {} (expected at most 2)",
            reduced.matching.len()
        ));
    }
    if reduced.delta_i_prime > 1 {
        return Err(SolverError::Inconsistency(format!(
            "reduced graph has Δ^I' = {} after a maximum matching",
            reduced.delta_i_prime
        )));
    }
    let q = q_from(g, p, &a, &reduced);
    Ok(Pipeline { l_split, reduced, q, diagnostics })
}

fn q_from(g: &Graph, p: &SplitPartition, a: &[usize], red: &ReducedInstance) -> BipartiteQ {
    let i_prime_nbrs = |c: usize| -> Vec<usize> {
        g.neighbors(c).iter().copied().filter(|w| red.i_prime.binary_search(w).is_ok()).collect()
    };
    let mut b: Vec<usize> = red.l.clone();
    b.extend(p.clique().iter().copied().filter(|&c| !i_prime_nbrs(c).is_empty()));
    b.sort_unstable();
    b.dedup();
    // Weight classes: connected components of "shares an I'-neighbour",
    // named by their least I'-neighbour; vertices without one are
    // singletons named past the vertex range.
    let mut weight = BTreeMap::new();
    let mut fresh = g.n();
    for &c in &b {
        let nb = i_prime_nbrs(c);
        if nb.is_empty() {
            weight.insert(c, fresh);
            fresh += 1;
        }
    }
    let mut pending: Vec<usize> = b.iter().copied().filter(|c| !weight.contains_key(c)).collect();
    while let Some(&seed) = pending.first() {
        let mut class = vec![seed];
        let mut nbrs = i_prime_nbrs(seed);
        loop {
            let before = class.len();
            for &c in &pending {
                if !class.contains(&c) && i_prime_nbrs(c).iter().any(|w| nbrs.contains(w)) {
                    class.push(c);
                    nbrs.extend(i_prime_nbrs(c));
                }
            }
            if class.len() == before {
                break;
            }
        }
        let name = *nbrs.iter().min().unwrap();
        for &c in &class {
            weight.insert(c, name);
        }
        pending.retain(|c| !class.contains(c));
    }
    let mut edges = Vec::new();
    for &x in a {
        for &c in &b {
            if g.has_edge(x, c) {
                edges.push((x, c));
            }
        }
    }
    edges.sort_unstable();
    BipartiteQ { a: a.to_vec(), b, edges, weight }
}

/// `Q` for the clique vertex `x` (which must have three independent
/// neighbours), after the removal and matching pipeline.
pub fn build_q(g: &Graph, p: &SplitPartition, x: usize) -> Result<BipartiteQ, SolverError> {
    require_valid(g, p)?;
    Ok(pipeline(g, p, x)?.q)
}

/// Exhaustive classification; Type I wins when both apply.
pub fn classify_q(q: &BipartiteQ) -> QClass {
    assert_eq!(q.a.len(), 3, "Q needs |A| = 3");
    let nbrs = |a: usize| -> Vec<usize> { q.b.iter().copied().filter(|&b| q.adjacent(a, b)).collect() };
    let (a0, a1, a2) = (q.a[0], q.a[1], q.a[2]);
    for &b0 in &nbrs(a0) {
        for &b1 in &nbrs(a1) {
            for &b2 in &nbrs(a2) {
                let w = [q.weight[&b0], q.weight[&b1], q.weight[&b2]];
                if b0 != b1 && b1 != b2 && b0 != b2 && w[0] != w[1] && w[1] != w[2] && w[0] != w[2] {
                    return QClass::TypeI { matching: vec![(a0, b0), (a1, b1), (a2, b2)] };
                }
            }
        }
    }
    for &c in &q.b {
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let (a, b, d) = (q.a[i], q.a[j], q.a[k]);
            if !(q.adjacent(a, c) && q.adjacent(b, c)) {
                continue;
            }
            if let Some(&e) = nbrs(d).iter().find(|&&e| e != c && q.weight[&e] != q.weight[&c]) {
                return QClass::TypeII { a, b, c, d, e };
            }
        }
    }
    QClass::Neither
}

/// The 3-split formula for a given `x`: `|L| + |I'| + 1` when `Q` is of Type
/// I or II, else `|L| + |I'| + 2`.
pub fn solve_k14_3split_at(g: &Graph, p: &SplitPartition, x: usize) -> Result<ThreeSplitAnalysis, SolverError> {
    require_valid(g, p)?;
    require_connected(g)?;
    if p.delta_i() != 3 {
        return Err(SolverError::DeltaI { expected: "3", got: p.delta_i() });
    }
    if !k14_free_3split_check(g, p)? {
        return Err(SolverError::NotK14Free);
    }
    let Pipeline { l_split, reduced, q, diagnostics } = pipeline(g, p, x)?;
    let class = classify_q(&q);
    let base = reduced.l.len() + reduced.i_prime.len();
    let value = base + if class == QClass::Neither { 2 } else { 1 };
    Ok(ThreeSplitAnalysis { x, l_split, reduced, q, class, value, diagnostics })
}

/// [`solve_k14_3split_at`] with `x` the least clique vertex having three
/// independent neighbours.
pub fn solve_k14_3split(g: &Graph, p: &SplitPartition) -> Result<(usize, ThreeSplitAnalysis), SolverError> {
    let x = p.clique().iter().copied().find(|&c| p.d_i(c) == 3).ok_or(SolverError::DeltaI {
        expected: "3",
        got: p.delta_i(),
    })?;
    let analysis = solve_k14_3split_at(g, p, x)?;
    Ok((analysis.value, analysis))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(edges: &[(usize, usize)], weights: &[(usize, usize)]) -> BipartiteQ {
        let mut e = edges.to_vec();
        e.sort_unstable();
        let weight: BTreeMap<usize, usize> = weights.iter().copied().collect();
        BipartiteQ { a: vec![0, 1, 2], b: weight.keys().copied().collect(), edges: e, weight }
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_q(&q(&[], &[(10, 1), (11, 2)])), QClass::Neither);
        assert!(matches!(
            classify_q(&q(&[(0, 10), (1, 11), (2, 12)], &[(10, 1), (11, 2), (12, 3)])),
            QClass::TypeI { .. }
        ));
        assert_eq!(
            classify_q(&q(&[(0, 10), (1, 10), (2, 11)], &[(10, 1), (11, 2)])),
            QClass::TypeII { a: 0, b: 1, c: 10, d: 2, e: 11 }
        );
        // Matching exists but two matched B-vertices share a weight; no
        // K_{1,2} centre.
        assert_eq!(classify_q(&q(&[(0, 10), (1, 11), (2, 12)], &[(10, 1), (11, 1), (12, 3)])), QClass::Neither);
        // One isolated A-vertex.
        assert_eq!(classify_q(&q(&[(0, 10), (1, 11)], &[(10, 1), (11, 2)])), QClass::Neither);
    }

    #[test]
    fn universal_x_gives_two() {
        // x = 0 adjacent to everything; clique {0,1,5}; 1 ~ 2, 5 ~ 3.
        let g = Graph::from_edges(6, [(0, 1), (0, 5), (1, 5), (0, 2), (0, 3), (0, 4), (1, 2), (5, 3)]).unwrap();
        let p = SplitPartition::new(&g, &[0, 1, 5], &[2, 3, 4]).unwrap();
        let (v, an) = solve_k14_3split(&g, &p).unwrap();
        assert_eq!(v, 2);
        assert_eq!(an.class, QClass::Neither);
    }
}
