use serde::{Deserialize, Serialize};

use super::{ConstructedGraph, ReductionError};
use crate::graph::{CliqueTree, Graph};

/// 3-dimensional matching over `W = X = Y = 0..q` (three namespaces).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeDMInstance {
    pub q: usize,
    /// `(w, x, y)` triples.
    pub triples: Vec<[usize; 3]>,
}

/// Role letters of the nine gadget vertices, in id order.
pub const GADGET_ROLES: [char; 9] = ['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i'];

/// Internal edges of one gadget, by role letter. `a, b, c` also belong to
/// the big clique.
const GADGET_EDGES: [(char, char); 16] = [
    ('a', 'b'),
    ('a', 'c'),
    ('b', 'c'),
    ('a', 'f'),
    ('b', 'f'),
    ('c', 'f'),
    ('c', 'd'),
    ('d', 'f'),
    ('c', 'g'),
    ('d', 'g'),
    ('a', 'i'),
    ('b', 'i'),
    ('a', 'e'),
    ('e', 'i'),
    ('a', 'h'),
    ('e', 'h'),
];

/// Maximal cliques inside one gadget, as a path hanging off the big clique
/// at `{a, b, c, f}`: `abcf – cdf – cdg` and `abcf – abi – aei – aeh`.
const GADGET_CLIQUES: [&str; 6] = ["abcf", "cdf", "cdg", "abi", "aei", "aeh"];
const GADGET_TREE: [(usize, usize); 5] = [(0, 1), (1, 2), (0, 3), (3, 4), (4, 5)];

impl ThreeDMInstance {
    pub fn p(&self) -> usize {
        self.triples.len()
    }

    pub fn validate(&self) -> Result<(), ReductionError> {
        if self.q == 0 {
            return Err(ReductionError::InvalidInstance("q must be positive".into()));
        }
        if let Some(i) = self.triples.iter().position(|t| t.iter().any(|&e| e >= self.q)) {
            return Err(ReductionError::InvalidInstance(format!("triple {i} names an element outside 0..{}", self.q)));
        }
        Ok(())
    }

    pub fn layout(&self) -> ThreeDMLayout {
        ThreeDMLayout { p: self.p(), q: self.q }
    }

    /// Whether `matching` (triple indices) is a perfect 3D matching.
    pub fn is_perfect_matching(&self, matching: &[usize]) -> bool {
        if matching.len() != self.q {
            return false;
        }
        let mut seen = vec![[false; 3]; self.q];
        for &i in matching {
            let Some(t) = self.triples.get(i) else { return false };
            for (dim, &e) in t.iter().enumerate() {
                if std::mem::replace(&mut seen[e][dim], true) {
                    return false;
                }
            }
        }
        true
    }

    /// Elements occurring in fewer than two triples, as warnings.
    fn rare_elements(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (dim, name) in ["w", "x", "y"].iter().enumerate() {
            for e in 0..self.q {
                let count = self.triples.iter().filter(|t| t[dim] == e).count();
                if count < 2 {
                    out.push(format!("element {name}_{e} occurs in {count} triple(s)"));
                }
            }
        }
        out
    }
}

/// Vertex numbering: gadget `i` occupies `9i..9i+9` in role order `a..i`,
/// then `w_*`, `x_*`, `y_*`, then `u, v, w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThreeDMLayout {
    pub p: usize,
    pub q: usize,
}

impl ThreeDMLayout {
    pub fn gadget(&self, i: usize, role: char) -> usize {
        let r = GADGET_ROLES.iter().position(|&c| c == role).expect("gadget role letter");
        9 * i + r
    }
    /// Gadget index and role letter of a gadget vertex.
    pub fn gadget_of(&self, v: usize) -> Option<(usize, char)> {
        (v < 9 * self.p).then(|| (v / 9, GADGET_ROLES[v % 9]))
    }
    /// Element vertex of dimension `dim` (0 = W, 1 = X, 2 = Y).
    pub fn element(&self, dim: usize, e: usize) -> usize {
        9 * self.p + dim * self.q + e
    }
    pub fn is_element(&self, v: usize) -> bool {
        (9 * self.p..9 * self.p + 3 * self.q).contains(&v)
    }
    pub fn u(&self) -> usize {
        9 * self.p + 3 * self.q
    }
    pub fn v(&self) -> usize {
        self.u() + 1
    }
    pub fn w(&self) -> usize {
        self.u() + 2
    }
    pub fn n(&self) -> usize {
        self.u() + 3
    }
}

/// The gadget graph with its explicit clique tree. The tree is checked to
/// be a clique tree of the graph in which every vertex's cliques form a
/// path.
pub fn reduce_3dm(inst: &ThreeDMInstance) -> Result<(ConstructedGraph, CliqueTree), ReductionError> {
    inst.validate()?;
    let lay = inst.layout();
    let p = lay.p;
    let mut g = Graph::new(lay.n())?;
    let mut roles = Vec::with_capacity(lay.n());
    for i in 0..p {
        roles.extend(GADGET_ROLES.iter().map(|r| format!("{r}_{i}")));
        for (x, y) in GADGET_EDGES {
            g.add_edge(lay.gadget(i, x), lay.gadget(i, y))?;
        }
        for (dim, role) in ['a', 'b', 'c'].into_iter().enumerate() {
            g.add_edge(lay.gadget(i, role), lay.element(dim, inst.triples[i][dim]))?;
            g.add_edge(lay.gadget(i, role), lay.u())?;
        }
    }
    let hub: Vec<usize> = (0..p).flat_map(|i| ['a', 'b', 'c'].map(|r| lay.gadget(i, r))).collect();
    for (k, &x) in hub.iter().enumerate() {
        for &y in &hub[k + 1..] {
            if !g.has_edge(x, y) {
                g.add_edge(x, y)?;
            }
        }
    }
    for name in ["w", "x", "y"] {
        roles.extend((0..inst.q).map(|e| format!("{name}_{e}")));
    }
    roles.extend(["u", "v", "w"].map(String::from));
    g.add_edge(lay.u(), lay.v())?;
    g.add_edge(lay.u(), lay.w())?;

    // Clique tree: the hub clique K = {a_i, b_i, c_i} ∪ {u} in the middle,
    // with {u, v}, {u, w}, one clique per element vertex, and each gadget's
    // cliques attached to it.
    let mut hub_clique = hub.clone();
    hub_clique.push(lay.u());
    let mut nodes = vec![hub_clique, vec![lay.u(), lay.v()], vec![lay.u(), lay.w()]];
    let mut edges = vec![(0, 1), (0, 2)];
    for dim in 0..3 {
        for e in 0..inst.q {
            let mut clique = vec![lay.element(dim, e)];
            clique.extend((0..p).filter(|&i| inst.triples[i][dim] == e).map(|i| lay.gadget(i, ['a', 'b', 'c'][dim])));
            edges.push((0, nodes.len()));
            nodes.push(clique);
        }
    }
    for i in 0..p {
        let base = nodes.len();
        for spec in GADGET_CLIQUES {
            nodes.push(spec.chars().map(|r| lay.gadget(i, r)).collect());
        }
        edges.push((0, base));
        edges.extend(GADGET_TREE.iter().map(|&(x, y)| (base + x, base + y)));
    }
    for node in &mut nodes {
        node.sort_unstable();
    }
    let tree = CliqueTree::from_parts(g.n(), nodes, edges)?;
    if !tree.is_valid_for(&g) {
        return Err(ReductionError::PathProperty("emitted tree is not a clique tree of the graph".into()));
    }
    if !tree.path_property {
        return Err(ReductionError::PathProperty("some vertex's cliques do not form a path".into()));
    }
    let mut c = ConstructedGraph::new(g, roles);
    c.predict("matchingBound", 2 * p + inst.q + 2);
    c.warnings = inst.rare_elements();
    Ok((c, tree))
}

/// All perfect 3D matchings as ascending triple indices.
pub fn perfect_3d_matchings(inst: &ThreeDMInstance) -> Vec<Vec<usize>> {
    fn rec(inst: &ThreeDMInstance, w: usize, used: &mut [Vec<bool>; 2], chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if w == inst.q {
            let mut sol = chosen.clone();
            sol.sort_unstable();
            out.push(sol);
            return;
        }
        for (i, t) in inst.triples.iter().enumerate() {
            if t[0] == w && !used[0][t[1]] && !used[1][t[2]] {
                used[0][t[1]] = true;
                used[1][t[2]] = true;
                chosen.push(i);
                rec(inst, w + 1, used, chosen, out);
                chosen.pop();
                used[0][t[1]] = false;
                used[1][t[2]] = false;
            }
        }
    }
    let mut out = Vec::new();
    if inst.validate().is_ok() {
        rec(inst, 0, &mut [vec![false; inst.q], vec![false; inst.q]], &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{clique_tree, perfect_elimination_order};

    fn tdm_sample() -> ThreeDMInstance {
        ThreeDMInstance { q: 2, triples: vec![[0, 0, 0], [0, 1, 0], [1, 0, 1]] }
    }

    #[test]
    fn tdm_sample_shape() {
        let (c, tree) = reduce_3dm(&tdm_sample()).unwrap();
        assert_eq!(c.graph.n(), 36);
        assert!(perfect_elimination_order(&c.graph).is_some());
        assert!(tree.path_property);
        // Maximal cliques agree with the generic clique-tree builder.
        let generic = clique_tree(&c.graph).unwrap();
        let mut a = tree.nodes.clone();
        let mut b = generic.nodes.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(perfect_3d_matchings(&tdm_sample()), vec![vec![1, 2]]);
        assert!(!c.warnings.is_empty());
    }

    #[test]
    fn gadget_degrees() {
        let inst = ThreeDMInstance { q: 1, triples: vec![[0, 0, 0]] };
        let (c, _) = reduce_3dm(&inst).unwrap();
        let lay = inst.layout();
        let deg = |r| c.graph.degree(lay.gadget(0, r));
        // d ~ c, f, g; e ~ a, h, i; f ~ a, b, c, d; g ~ c, d; h ~ a, e; i ~ a, b, e.
        assert_eq!([deg('d'), deg('e'), deg('f'), deg('g'), deg('h'), deg('i')], [3, 3, 4, 2, 2, 3]);
        assert_eq!(c.vertex("u"), Some(12));
    }
}
