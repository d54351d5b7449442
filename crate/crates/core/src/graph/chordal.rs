use serde::Serialize;

use super::{Graph, GraphError};

/// Lexicographic BFS visit order. Among vertices with equal labels the
/// smallest id is taken, so the start vertex is 0.
pub fn lex_bfs(g: &Graph) -> Vec<usize> {
    let n = g.n();
    // Labels are lists of visit stamps, larger stamps first, compared
    // lexicographically; earlier-visited neighbours carry larger stamps.
    let mut labels: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .fold(None, |best: Option<usize>, v| match best {
                Some(b) if labels[b] >= labels[v] => Some(b),
                _ => Some(v),
            })
            .unwrap();
        visited[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !visited[w] {
                labels[w].push(n - step);
            }
        }
    }
    order
}

/// Reverse LexBFS order if it is a perfect elimination ordering, `None`
/// when `g` is not chordal.
pub fn perfect_elimination_order(g: &Graph) -> Option<Vec<usize>> {
    let mut peo = lex_bfs(g);
    peo.reverse();
    is_perfect_elimination_order(g, &peo).then_some(peo)
}

/// Checks that each vertex's later neighbours form a clique.
fn is_perfect_elimination_order(g: &Graph, order: &[usize]) -> bool {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // Standard test: for v with later neighbours, the earliest one, p, must
    // be adjacent to all the others.
    for &v in order {
        let later: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| pos[w] > pos[v]).collect();
        if let Some(&p) = later.iter().min_by_key(|&&w| pos[w]) {
            if later.iter().any(|&w| w != p && !g.has_edge(p, w)) {
                return false;
            }
        }
    }
    true
}

/// Maximal cliques of a chordal graph, each sorted, listed in
/// lexicographic order.
fn maximal_cliques(g: &Graph, peo: &[usize]) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    let mut candidates: Vec<Vec<usize>> = peo
        .iter()
        .map(|&v| {
            let mut c: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| pos[w] > pos[v]).collect();
            c.push(v);
            c.sort_unstable();
            c
        })
        .collect();
    candidates.sort();
    candidates.dedup();
    let subset = |a: &[usize], b: &[usize]| a.len() < b.len() && a.iter().all(|x| b.binary_search(x).is_ok());
    let maximal: Vec<Vec<usize>> = candidates
        .iter()
        .filter(|c| !candidates.iter().any(|d| subset(c, d)))
        .cloned()
        .collect();
    maximal
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CliqueTree {
    pub nodes: Vec<Vec<usize>>,
    pub tree_edges: Vec<(usize, usize)>,
    pub vertex_paths: Vec<Vec<usize>>,
    /// Every vertex's nodes induce a path in the tree.
    pub path_property: bool,
}

impl CliqueTree {
    /// Wraps given nodes and edges; `n` is the vertex count of the graph.
    /// Fails unless the edges form a spanning tree on the nodes.
    pub fn from_parts(n: usize, nodes: Vec<Vec<usize>>, tree_edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let k = nodes.len();
        if k == 0 || tree_edges.len() + 1 != k {
            return Err(GraphError::Precondition(format!(
                "{} edges cannot form a tree on {k} nodes",
                tree_edges.len()
            )));
        }
        let mut uf = UnionFind::new(k);
        for &(a, b) in &tree_edges {
            if a >= k || b >= k || !uf.union(a, b) {
                return Err(GraphError::Precondition(format!("tree edge ({a}, {b}) is invalid or closes a cycle")));
            }
        }
        let mut vertex_paths = vec![Vec::new(); n];
        for (i, node) in nodes.iter().enumerate() {
            for &v in node {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { id: v, n });
                }
                vertex_paths[v].push(i);
            }
        }
        let mut t = CliqueTree { nodes, tree_edges, vertex_paths, path_property: false };
        t.path_property = (0..n).all(|v| t.induces_path(&t.vertex_paths[v]));
        Ok(t)
    }

    fn induced_degrees(&self, set: &[usize]) -> (Vec<usize>, usize) {
        let inside = |x: usize| set.binary_search(&x).is_ok();
        let mut deg = vec![0; set.len()];
        let mut edges = 0;
        for &(a, b) in &self.tree_edges {
            if inside(a) && inside(b) {
                deg[set.binary_search(&a).unwrap()] += 1;
                deg[set.binary_search(&b).unwrap()] += 1;
                edges += 1;
            }
        }
        (deg, edges)
    }

    /// A node set is connected in a tree iff it spans `|set| - 1` tree edges.
    pub fn induces_subtree(&self, set: &[usize]) -> bool {
        !set.is_empty() && self.induced_degrees(set).1 + 1 == set.len()
    }

    pub fn induces_path(&self, set: &[usize]) -> bool {
        let (deg, _) = self.induced_degrees(set);
        self.induces_subtree(set) && deg.iter().all(|&d| d <= 2)
    }

    /// Each node is a maximal clique of `g`, every edge lies in a node and
    /// every vertex's nodes form a subtree.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let is_max_clique = |c: &[usize]| {
            c.iter().enumerate().all(|(i, &u)| c[i + 1..].iter().all(|&v| g.has_edge(u, v)))
                && (0..g.n()).all(|w| c.contains(&w) || c.iter().any(|&u| !g.has_edge(u, w)))
        };
        self.vertex_paths.len() == g.n()
            && self.nodes.iter().all(|c| is_max_clique(c))
            && g.edges().all(|(u, v)| self.nodes.iter().any(|c| c.contains(&u) && c.contains(&v)))
            && self.vertex_paths.iter().all(|p| self.induces_subtree(p))
    }
}

/// Clique tree via maximum-weight spanning tree on clique intersections;
/// `None` when `g` is not chordal. Ties go to the lexicographically smaller
/// node pair.
pub fn clique_tree(g: &Graph) -> Option<CliqueTree> {
    let peo = perfect_elimination_order(g)?;
    let nodes = maximal_cliques(g, &peo);
    let k = nodes.len();
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let w = nodes[i].iter().filter(|x| nodes[j].binary_search(x).is_ok()).count();
            pairs.push((std::cmp::Reverse(w), i, j));
        }
    }
    pairs.sort();
    let mut uf = UnionFind::new(k);
    let edges: Vec<(usize, usize)> = pairs.into_iter().filter(|&(_, i, j)| uf.union(i, j)).map(|(_, i, j)| (i, j)).collect();
    Some(CliqueTree::from_parts(g.n(), nodes, edges).expect("kruskal yields a spanning tree"))
}

/// Greedy along a perfect elimination ordering: take each vertex none of
/// whose neighbours has been taken. Optimal on chordal graphs.
pub fn chordal_max_independent_set(g: &Graph) -> Result<Vec<usize>, GraphError> {
    let peo = perfect_elimination_order(g).ok_or(GraphError::NotChordal)?;
    let mut blocked = vec![false; g.n()];
    let mut out = Vec::new();
    for v in peo {
        if !blocked[v] {
            out.push(v);
            blocked[v] = true;
            for &w in g.neighbors(v) {
                blocked[w] = true;
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = x;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    /// Joins the two classes; false if they were already one. The smaller
    /// root becomes the representative.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        (0u64..1 << pairs.len()).map(move |bits| {
            Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e))
                .unwrap()
        })
    }

    /// Oracle: chordal iff no induced cycle of length >= 4, found by trying
    /// every vertex subset of size >= 4 that induces a 2-regular connected graph.
    fn brute_force_chordal(g: &Graph) -> bool {
        let n = g.n();
        for bits in 0u32..1 << n {
            let set: Vec<usize> = (0..n).filter(|&v| bits >> v & 1 == 1).collect();
            if set.len() < 4 {
                continue;
            }
            let (h, _) = g.induced_subgraph(&set).unwrap();
            if h.is_connected() && (0..h.n()).all(|v| h.degree(v) == 2) {
                return false;
            }
        }
        true
    }

    fn brute_force_alpha(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&b| g.edges().all(|(u, v)| b >> u & 1 == 0 || b >> v & 1 == 0))
            .map(|b| b.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn c4_is_not_chordal() {
        assert!(clique_tree(&Graph::cycle(4)).is_none());
        assert_eq!(chordal_max_independent_set(&Graph::cycle(4)), Err(GraphError::NotChordal));
    }

    #[test]
    fn path_clique_tree() {
        let t = clique_tree(&Graph::path(4)).unwrap();
        assert_eq!(t.nodes, vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        assert_eq!(t.tree_edges, vec![(0, 1), (1, 2)]);
        assert!(t.path_property);
        assert_eq!(t.vertex_paths[1], vec![0, 1]);
    }

    #[test]
    fn star_has_no_path_property_in_general() {
        // K_{1,3}: three cliques sharing the centre; any spanning tree is
        // a path here, so the centre still induces a path.
        let t = clique_tree(&Graph::star(3)).unwrap();
        assert!(t.path_property);
        // K_{1,4} forces a node of degree >= 3 among the centre's cliques
        // only if the tree is not a path; Kruskal picks (0,1),(0,2),(0,3).
        let t = clique_tree(&Graph::star(4)).unwrap();
        assert!(!t.path_property);
        assert!(t.is_valid_for(&Graph::star(4)));
    }

    #[test]
    fn chordality_and_alpha_match_brute_force_up_to_6() {
        for n in 1..=6 {
            for g in all_graphs(n) {
                let tree = clique_tree(&g);
                assert_eq!(tree.is_some(), brute_force_chordal(&g), "{g:?}");
                if let Some(t) = tree {
                    assert!(t.nodes.len() <= n);
                    assert!(t.is_valid_for(&g), "{g:?}");
                    let mis = chordal_max_independent_set(&g).unwrap();
                    assert_eq!(mis.len(), brute_force_alpha(&g), "{g:?}");
                }
            }
        }
    }

    #[test]
    fn from_parts_rejects_non_trees() {
        let nodes = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
        assert!(CliqueTree::from_parts(3, nodes.clone(), vec![(0, 1), (1, 2), (0, 2)]).is_err());
        assert!(CliqueTree::from_parts(3, nodes, vec![(0, 1), (0, 1)]).is_err());
    }
}
