use serde::Serialize;

use super::{Graph, GraphError};

/// A split partition `V = C ∪ I` with `C` a maximal clique and `I` independent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitPartition {
    clique: Vec<usize>,
    independent: Vec<usize>,
    #[serde(rename = "deltaI")]
    delta_i: usize,
    #[serde(skip)]
    in_clique: Vec<bool>,
    /// `N(v) ∩ I` for clique vertices, empty for independent ones.
    #[serde(skip)]
    i_nbrs: Vec<Vec<usize>>,
}

impl SplitPartition {
    /// Validates every invariant, including maximality of the clique.
    pub fn new(g: &Graph, clique: &[usize], independent: &[usize]) -> Result<Self, GraphError> {
        let n = g.n();
        let bad = |m: String| Err(GraphError::InvalidPartition(m));
        let mut in_clique = vec![false; n];
        let mut seen = vec![false; n];
        for &v in clique.iter().chain(independent) {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { id: v, n });
            }
            if seen[v] {
                return bad(format!("vertex {v} listed twice"));
            }
            seen[v] = true;
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return bad(format!("vertex {v} is in neither part"));
        }
        for &v in clique {
            in_clique[v] = true;
        }
        for (i, &u) in clique.iter().enumerate() {
            for &v in &clique[i + 1..] {
                if !g.has_edge(u, v) {
                    return bad(format!("clique vertices {u} and {v} are not adjacent"));
                }
            }
        }
        for &u in independent {
            if let Some(&v) = g.neighbors(u).iter().find(|&&v| !in_clique[v]) {
                return bad(format!("independent vertices {u} and {v} are adjacent"));
            }
            if g.degree(u) == clique.len() {
                return bad(format!("clique is not maximal: {u} is adjacent to all of it"));
            }
        }
        Ok(Self::build(g, clique.to_vec(), independent.to_vec(), in_clique))
    }

    fn build(g: &Graph, mut clique: Vec<usize>, mut independent: Vec<usize>, in_clique: Vec<bool>) -> Self {
        clique.sort_unstable();
        independent.sort_unstable();
        let mut i_nbrs = vec![Vec::new(); g.n()];
        for &c in &clique {
            i_nbrs[c] = g.neighbors(c).iter().copied().filter(|&w| !in_clique[w]).collect();
        }
        let delta_i = clique.iter().map(|&c| i_nbrs[c].len()).max().unwrap_or(0);
        SplitPartition { clique, independent, delta_i, in_clique, i_nbrs }
    }

    pub fn clique(&self) -> &[usize] {
        &self.clique
    }

    pub fn independent(&self) -> &[usize] {
        &self.independent
    }

    /// `Δ^I`: the largest number of `I`-neighbours of a clique vertex.
    pub fn delta_i(&self) -> usize {
        self.delta_i
    }

    pub fn in_clique(&self, v: usize) -> bool {
        self.in_clique[v]
    }

    /// `N^I(v)` for a clique vertex; empty for independent vertices.
    pub fn i_neighbors(&self, v: usize) -> &[usize] {
        &self.i_nbrs[v]
    }

    pub fn d_i(&self, v: usize) -> usize {
        self.i_nbrs[v].len()
    }

    /// Whether `⋃_{y ∈ I} N(y)` is all of `C`.
    pub fn independent_covers_clique(&self) -> bool {
        self.clique.iter().all(|&c| !self.i_nbrs[c].is_empty())
    }

    /// Every valid split partition with a maximal clique (brute force).
    pub fn enumerate_all(g: &Graph) -> Vec<SplitPartition> {
        let n = g.n();
        assert!(n <= 20, "brute-force enumeration limited to 20 vertices");
        let mut out = Vec::new();
        for bits in 0u32..(1 << n) {
            let clique: Vec<usize> = (0..n).filter(|&v| bits >> v & 1 == 1).collect();
            let independent: Vec<usize> = (0..n).filter(|&v| bits >> v & 1 == 0).collect();
            if let Ok(p) = SplitPartition::new(g, &clique, &independent) {
                out.push(p);
            }
        }
        out
    }
}

/// Hammer–Simeone recognition: returns a partition with maximal clique, or
/// `None` when `g` is not split.
///
/// Vertices are ordered by degree (descending, ties by id); with `m` the
/// largest index such that `d_m >= m - 1`, the graph is split iff
/// `Σ_{i<=m} d_i = m(m-1) + Σ_{i>m} d_i`, and then the first `m` vertices form
/// a clique. The clique is then extended to a maximal one.
pub fn split_partition(g: &Graph) -> Option<SplitPartition> {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let deg: Vec<usize> = order.iter().map(|&v| g.degree(v)).collect();
    let m = (1..=n).filter(|&i| deg[i - 1] + 1 >= i).max().unwrap_or(0);
    let head: usize = deg[..m].iter().sum();
    let tail: usize = deg[m..].iter().sum();
    if head != m * (m - 1) + tail {
        return None;
    }
    let mut in_clique = vec![false; n];
    for &v in &order[..m] {
        in_clique[v] = true;
    }
    let mut clique: Vec<usize> = order[..m].to_vec();
    // At most one independent vertex can see the whole clique.
    if let Some(v) = (0..n).find(|&v| !in_clique[v] && g.degree(v) == clique.len()) {
        in_clique[v] = true;
        clique.push(v);
    }
    let independent: Vec<usize> = (0..n).filter(|&v| !in_clique[v]).collect();
    debug_assert!(SplitPartition::new(g, &clique, &independent).is_ok());
    Some(SplitPartition::build(g, clique, independent, in_clique))
}

/// True iff no vertex has `t` pairwise non-adjacent neighbours.
pub fn is_k1t_free(g: &Graph, t: usize) -> bool {
    if t == 0 {
        return false;
    }
    (0..g.n()).all(|v| !has_independent_subset(g, g.neighbors(v), t))
}

/// Whether `candidates` contains `t` pairwise non-adjacent vertices.
fn has_independent_subset(g: &Graph, candidates: &[usize], t: usize) -> bool {
    fn go(g: &Graph, cands: &[usize], chosen: &mut Vec<usize>, t: usize) -> bool {
        if chosen.len() == t {
            return true;
        }
        if chosen.len() + cands.len() < t {
            return false;
        }
        for (i, &v) in cands.iter().enumerate() {
            if chosen.iter().all(|&c| !g.has_edge(c, v)) {
                chosen.push(v);
                if go(g, &cands[i + 1..], chosen, t) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    go(g, candidates, &mut Vec::with_capacity(t), t)
}

fn check_partition(g: &Graph, p: &SplitPartition) -> Result<(), GraphError> {
    SplitPartition::new(g, &p.clique, &p.independent).map(|_| ())
}

fn shares_i_neighbor(p: &SplitPartition, u: usize, v: usize) -> bool {
    p.i_neighbors(u).iter().any(|w| p.i_neighbors(v).contains(w))
}

/// Claw-freeness of a split graph read off its partition: `Δ^I <= 1`, or
/// `Δ^I = 2` and every clique vertex with two `I`-neighbours shares one with
/// every other clique vertex.
pub fn claw_free_split_check(g: &Graph, p: &SplitPartition) -> Result<bool, GraphError> {
    check_partition(g, p)?;
    Ok(match p.delta_i() {
        0 | 1 => true,
        2 => p.clique().iter().filter(|&&v| p.d_i(v) == 2).all(|&v| {
            p.clique().iter().all(|&u| u == v || shares_i_neighbor(p, u, v))
        }),
        _ => false,
    })
}

/// `K_{1,4}`-freeness of a 3-split graph: every clique vertex with three
/// `I`-neighbours shares one with every other clique vertex.
pub fn k14_free_3split_check(g: &Graph, p: &SplitPartition) -> Result<bool, GraphError> {
    check_partition(g, p)?;
    if p.delta_i() != 3 {
        return Err(GraphError::Precondition(format!(
            "expected a 3-split graph, got Δ^I = {}",
            p.delta_i()
        )));
    }
    Ok(p.clique().iter().filter(|&&v| p.d_i(v) == 3).all(|&v| {
        p.clique().iter().all(|&u| u == v || shares_i_neighbor(p, u, v))
    }))
}
