use serde::Serialize;

use super::{ConstructedGraph, ReductionError};
use crate::graph::Graph;
use crate::oracle::{edn_oracle, gamma_exact, medn_oracle, Budget};

/// Copies `g` and appends, for each base vertex in id order, a path of
/// `len` new vertices `v^0..v^{len-1}` with the base vertex joined to
/// `v^{anchor}`.
fn attach_paths(g: &Graph, len: usize, anchor: usize) -> ConstructedGraph {
    let n = g.n();
    let mut h = Graph::new(n * (len + 1)).expect("nonempty");
    for (u, v) in g.edges() {
        h.add_edge(u, v).unwrap();
    }
    let mut roles: Vec<String> = (0..n).map(|v| format!("v_{v}")).collect();
    for v in 0..n {
        let first = n + v * len;
        for j in 0..len {
            roles.push(format!("v_{v}^{j}"));
            if j + 1 < len {
                h.add_edge(first + j, first + j + 1).unwrap();
            }
        }
        h.add_edge(v, first + anchor).unwrap();
    }
    ConstructedGraph::new(h, roles)
}

/// `GP_2(g)`: a pendant path `v – v^1 – v^2` at every vertex. Vertex ids:
/// base vertices first, then `v^1, v^2` per base vertex.
pub fn build_gp2(g: &Graph) -> ConstructedGraph {
    let n = g.n();
    let mut h = Graph::new(3 * n).expect("nonempty");
    for (u, v) in g.edges() {
        h.add_edge(u, v).unwrap();
    }
    let mut roles: Vec<String> = (0..n).map(|v| format!("v_{v}")).collect();
    for v in 0..n {
        roles.push(format!("v_{v}^1"));
        roles.push(format!("v_{v}^2"));
        h.add_edge(v, n + 2 * v).unwrap();
        h.add_edge(n + 2 * v, n + 2 * v + 1).unwrap();
    }
    let mut c = ConstructedGraph::new(h, roles);
    c.predict("gamma", n);
    c
}

/// `GP_3(g)`: a path `v^0 – v^1 – v^2` per vertex, `v` joined to `v^1`.
pub fn build_gp3(g: &Graph) -> ConstructedGraph {
    let mut c = attach_paths(g, 3, 1);
    c.predict("gamma", g.n());
    c.predict("medn", 2 * g.n());
    c
}

/// `GP_5(g)`: a path `v^0 .. v^4` per vertex, `v` joined to `v^2`.
pub fn build_gp5(g: &Graph) -> ConstructedGraph {
    let mut c = attach_paths(g, 5, 2);
    c.predict("medn", 3 * g.n());
    c
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Gp2ConjectureReport {
    pub n: usize,
    pub medn_base: usize,
    pub medn_gp2: usize,
    /// Whether `γ_m^∞(GP_2(g)) = γ_m^∞(g) + n` on this input.
    pub consistent: bool,
}

/// Evidence for the `GP_2` conjecture on one base graph.
pub fn test_gp2_conjecture(g: &Graph, budget: &mut Budget) -> Result<Gp2ConjectureReport, ReductionError> {
    let medn_base = medn_oracle(g, budget)?;
    let medn_gp2 = medn_oracle(&build_gp2(g).graph, budget)?;
    Ok(Gp2ConjectureReport { n: g.n(), medn_base, medn_gp2, consistent: medn_gp2 == medn_base + g.n() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Gp3EternalReport {
    pub n: usize,
    pub k: usize,
    pub edn_base: usize,
    pub edn_gp3: usize,
    /// `γ^∞(g) <= k`.
    pub base_side: bool,
    /// `γ^∞(GP_3(g)) <= k + 2n`.
    pub gp3_side: bool,
    pub holds: bool,
}

/// Checks `γ^∞(g) <= k` iff `γ^∞(GP_3(g)) <= k + 2n` with the one-guard
/// oracle on both sides.
pub fn test_gp3_eternal_correspondence(g: &Graph, k: usize, budget: &mut Budget) -> Result<Gp3EternalReport, ReductionError> {
    let n = g.n();
    let edn_base = edn_oracle(g, budget)?.value;
    let edn_gp3 = edn_oracle(&build_gp3(g).graph, budget)?.value;
    let base_side = edn_base <= k;
    let gp3_side = edn_gp3 <= k + 2 * n;
    Ok(Gp3EternalReport { n, k, edn_base, edn_gp3, base_side, gp3_side, holds: base_side == gp3_side })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Gp5DominationReport {
    pub n: usize,
    pub gamma_base: usize,
    pub gamma_gp5: usize,
    /// Whether `γ(GP_5(g)) = γ(g) + 2n`.
    pub holds: bool,
}

pub fn test_gp5_domination_correspondence(g: &Graph) -> Gp5DominationReport {
    let gamma_base = gamma_exact(g);
    let gamma_gp5 = gamma_exact(&build_gp5(g).graph);
    Gp5DominationReport { n: g.n(), gamma_base, gamma_gp5, holds: gamma_gp5 == gamma_base + 2 * g.n() }
}
