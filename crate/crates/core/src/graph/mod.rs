//! Simple undirected graphs, their text formats, and the structural
//! recognizers (split, `K_{1,t}`-free, chordal) used by the rest of the crate.

mod chordal;
mod format;
mod split;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use chordal::{
    chordal_max_independent_set, clique_tree, lex_bfs, perfect_elimination_order, CliqueTree,
};
pub use format::parse_graph;
pub use split::{
    claw_free_split_check, is_k1t_free, k14_free_3split_check, split_partition, SplitPartition,
};

/// Bit mask over vertex ids; the exponential algorithms work on graphs with at
/// most [`MASK_BITS`] vertices.
pub type VertexMask = u128;

/// Largest vertex count representable by a [`VertexMask`].
pub const MASK_BITS: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex id {id} out of range for n = {n}")]
    VertexOutOfRange { id: usize, n: usize },
    #[error("malformed graph text: {0}")]
    Syntax(String),
    #[error("partition is not a valid split partition: {0}")]
    InvalidPartition(String),
    #[error("graph is not chordal")]
    NotChordal,
    #[error("graph has {0} vertices; at most {MASK_BITS} supported here")]
    TooLarge(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// A finite, simple, undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    labels: BTreeMap<usize, String>,
}

impl Graph {
    /// Edgeless graph on `n >= 1` vertices.
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        Ok(Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
            labels: BTreeMap::new(),
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n).expect("n >= 1");
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("n >= 1")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    /// The star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    /// Adds the edge `uv`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for id in [u, v] {
            if id >= n {
                return Err(GraphError::VertexOutOfRange { id, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
            self.edge_count += 1;
        }
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(pos) => {
                self.adj[u].remove(pos);
                let pos = self.adj[v].binary_search(&u).unwrap();
                self.adj[v].remove(pos);
                self.edge_count -= 1;
                true
            }
            Err(_) => false,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Sorted open neighbourhood.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// `u == v` or `uv` is an edge.
    pub fn in_closed_nbhd(&self, u: usize, v: usize) -> bool {
        u == v || self.has_edge(u, v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.edge_count == n * (n - 1) / 2
    }

    /// Vertices adjacent to every other vertex.
    pub fn universal_vertices(&self) -> Vec<usize> {
        let n = self.n();
        (0..n).filter(|&v| self.degree(v) + 1 == n).collect()
    }

    /// `K_{1,t}` with `t >= 2` (with centre and leaves in any numbering).
    pub fn is_star(&self) -> bool {
        let n = self.n();
        if n < 3 || self.edge_count != n - 1 {
            return false;
        }
        self.adj.iter().any(|ns| ns.len() == n - 1)
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Maximal connected vertex sets, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on `vertices` (any order, duplicates ignored). Returns
    /// the subgraph and the map from new ids to ids of `self`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            if v >= self.n() {
                return Err(GraphError::VertexOutOfRange { id: v, n: self.n() });
            }
            index[v] = i;
        }
        let mut sub = Graph::new(keep.len())?;
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                if index[w] != usize::MAX && i < index[w] {
                    sub.add_edge(i, index[w])?;
                }
            }
            if let Some(l) = self.labels.get(&v) {
                sub.labels.insert(i, l.clone());
            }
        }
        Ok((sub, keep))
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut g = Graph::new(shift + other.n()).unwrap();
        for (u, v) in self.edges() {
            g.add_edge(u, v).unwrap();
        }
        for (u, v) in other.edges() {
            g.add_edge(u + shift, v + shift).unwrap();
        }
        g
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) {
        assert!(v < self.n());
        self.labels.insert(v, label.into());
    }

    /// Display name: the label when present, otherwise the id.
    pub fn name(&self, v: usize) -> String {
        self.labels.get(&v).cloned().unwrap_or_else(|| v.to_string())
    }

    pub fn ensure_mask_size(&self) -> Result<(), GraphError> {
        if self.n() > MASK_BITS {
            Err(GraphError::TooLarge(self.n()))
        } else {
            Ok(())
        }
    }

    /// Closed neighbourhood `N[v]` of every vertex as a mask.
    pub fn closed_masks(&self) -> Result<Vec<VertexMask>, GraphError> {
        self.ensure_mask_size()?;
        Ok((0..self.n())
            .map(|v| self.adj[v].iter().fold(1u128 << v, |m, &w| m | 1u128 << w))
            .collect())
    }

    pub fn full_mask(&self) -> VertexMask {
        mask_of_first(self.n())
    }
}

pub fn mask_of_first(n: usize) -> VertexMask {
    if n >= MASK_BITS {
        VertexMask::MAX
    } else {
        (1u128 << n) - 1
    }
}

pub fn mask_from(vertices: impl IntoIterator<Item = usize>) -> VertexMask {
    vertices.into_iter().fold(0, |m, v| m | 1u128 << v)
}

/// Members of a mask in increasing order.
pub fn mask_members(mut m: VertexMask) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        out.push(v);
        m &= m - 1;
    }
    out
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}
