use serde::{Deserialize, Serialize};

use super::{ConstructedGraph, ReductionError};
use crate::graph::Graph;

/// Exact cover by 3-sets over the elements `0..3q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct X3CInstance {
    pub q: usize,
    pub triples: Vec<[usize; 3]>,
}

impl X3CInstance {
    pub fn validate(&self) -> Result<(), ReductionError> {
        if self.q == 0 {
            return Err(ReductionError::InvalidInstance("q must be positive".into()));
        }
        for (i, t) in self.triples.iter().enumerate() {
            if t.iter().any(|&e| e >= 3 * self.q) {
                return Err(ReductionError::InvalidInstance(format!("triple {i} names an element outside 0..{}", 3 * self.q)));
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(ReductionError::InvalidInstance(format!("triple {i} repeats an element")));
            }
        }
        Ok(())
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..3 * self.q
    }

    pub fn layout(&self) -> X3CLayout {
        X3CLayout { m: self.triples.len(), q: self.q }
    }

    /// Whether `cover` (triple indices) is an exact cover.
    pub fn is_exact_cover(&self, cover: &[usize]) -> bool {
        let mut seen = vec![false; 3 * self.q];
        if cover.len() != self.q {
            return false;
        }
        for &i in cover {
            let Some(t) = self.triples.get(i) else { return false };
            for &e in t {
                if std::mem::replace(&mut seen[e], true) {
                    return false;
                }
            }
        }
        true
    }
}

/// Vertex numbering of the reduced graph: triple vertices `c_i` first, then
/// the element vertices, then `u, v, w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct X3CLayout {
    pub m: usize,
    pub q: usize,
}

impl X3CLayout {
    pub fn c(&self, i: usize) -> usize {
        i
    }
    pub fn x(&self, e: usize) -> usize {
        self.m + e
    }
    pub fn u(&self) -> usize {
        self.m + 3 * self.q
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

/// Split graph with clique `{c_i} ∪ {u}`, `c_i ~ x_e` iff `e ∈ C_i`, and
/// pendant vertices `v, w` at `u`.
pub fn reduce_x3c(inst: &X3CInstance) -> Result<ConstructedGraph, ReductionError> {
    inst.validate()?;
    let lay = inst.layout();
    let mut g = Graph::new(lay.n())?;
    let mut roles = Vec::with_capacity(lay.n());
    for (i, t) in inst.triples.iter().enumerate() {
        roles.push(format!("c_{i}"));
        for j in i + 1..lay.m {
            g.add_edge(lay.c(i), lay.c(j))?;
        }
        g.add_edge(lay.c(i), lay.u())?;
        for &e in t {
            g.add_edge(lay.c(i), lay.x(e))?;
        }
    }
    roles.extend(inst.elements().map(|e| format!("x_{e}")));
    roles.extend(["u", "v", "w"].map(String::from));
    g.add_edge(lay.u(), lay.v())?;
    g.add_edge(lay.u(), lay.w())?;
    let mut c = ConstructedGraph::new(g, roles);
    c.predict("deltaI", 3);
    c.predict("coverBound", inst.q + 2);
    Ok(c)
}

/// All exact covers, each as ascending triple indices, in lexicographic
/// order.
pub fn exact_covers(inst: &X3CInstance) -> Vec<Vec<usize>> {
    fn rec(inst: &X3CInstance, covered: &mut Vec<bool>, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(e) = covered.iter().position(|&c| !c) else {
            let mut sol = chosen.clone();
            sol.sort_unstable();
            out.push(sol);
            return;
        };
        for (i, t) in inst.triples.iter().enumerate() {
            if t.contains(&e) && t.iter().all(|&x| !covered[x]) {
                t.iter().for_each(|&x| covered[x] = true);
                chosen.push(i);
                rec(inst, covered, chosen, out);
                chosen.pop();
                t.iter().for_each(|&x| covered[x] = false);
            }
        }
    }
    let mut out = Vec::new();
    if inst.validate().is_ok() {
        rec(inst, &mut vec![false; 3 * inst.q], &mut Vec::new(), &mut out);
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_k1t_free, split_partition};

    fn x3c_sample() -> X3CInstance {
        X3CInstance { q: 3, triples: vec![[0, 1, 2], [3, 4, 5], [1, 2, 4], [6, 7, 8], [5, 6, 7]] }
    }

    #[test]
    fn x3c_sample_shape() {
        let c = reduce_x3c(&x3c_sample()).unwrap();
        assert_eq!(c.graph.n(), 17);
        let p = split_partition(&c.graph).unwrap();
        assert_eq!(p.delta_i(), 3);
        assert!(is_k1t_free(&c.graph, 5));
        assert_eq!(c.vertex("u"), Some(14));
        assert_eq!(exact_covers(&x3c_sample()), vec![vec![0, 1, 3]]);
        assert!(x3c_sample().is_exact_cover(&[0, 1, 3]));
        assert!(!x3c_sample().is_exact_cover(&[0, 2, 3]));
    }

    #[test]
    fn invalid_triple() {
        let inst = X3CInstance { q: 1, triples: vec![[0, 1, 0]] };
        assert!(matches!(reduce_x3c(&inst), Err(ReductionError::InvalidInstance(_))));
    }
}
