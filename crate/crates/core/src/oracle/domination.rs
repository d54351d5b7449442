use crate::graph::{mask_members, Graph, VertexMask};

/// True iff `N[s] = V`.
pub fn is_dominating(g: &Graph, s: &[usize]) -> bool {
    let mut dominated = vec![false; g.n()];
    for &v in s {
        dominated[v] = true;
        for &w in g.neighbors(v) {
            dominated[w] = true;
        }
    }
    dominated.iter().all(|&d| d)
}

pub(crate) fn closed_union(closed: &[VertexMask], set: VertexMask) -> VertexMask {
    let mut m = set;
    let mut out = 0;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        out |= closed[v];
    }
    out
}

/// Minimum dominating set size by branch and bound.
///
/// Branches on the closed neighbourhood of the least undominated vertex.
/// The upper bound starts from a greedy solution; the lower bound is a
/// greedy 2-packing (vertices with pairwise disjoint closed neighbourhoods
/// each need their own dominator).
pub fn gamma_exact(g: &Graph) -> usize {
    min_dominating_set(g).len()
}

/// A minimum dominating set, sorted.
pub fn min_dominating_set(g: &Graph) -> Vec<usize> {
    g.connected_components()
        .into_iter()
        .flat_map(|comp| {
            let (h, map) = g.induced_subgraph(&comp).expect("component");
            component_min_dominating_set(&h).into_iter().map(move |v| map[v])
        })
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}

fn component_min_dominating_set(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let closed: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut c = g.neighbors(v).to_vec();
            c.push(v);
            c.sort_unstable();
            c
        })
        .collect();
    let greedy = greedy_dominating_set(g, &closed);
    let lower = two_packing_bound(g, &closed);
    let mut search = Search {
        closed: &closed,
        max_cover: closed.iter().map(Vec::len).max().unwrap(),
        best: greedy,
        lower,
        chosen: Vec::new(),
        cover_count: vec![0; n],
        undominated: n,
    };
    if search.best.len() > search.lower {
        search.branch();
    }
    let mut best = search.best;
    best.sort_unstable();
    best
}

fn greedy_dominating_set(g: &Graph, closed: &[Vec<usize>]) -> Vec<usize> {
    let n = g.n();
    let mut dominated = vec![false; n];
    let mut left = n;
    let mut out = Vec::new();
    while left > 0 {
        let v = (0..n)
            .max_by_key(|&v| (closed[v].iter().filter(|&&w| !dominated[w]).count(), std::cmp::Reverse(v)))
            .unwrap();
        for &w in &closed[v] {
            if !dominated[w] {
                dominated[w] = true;
                left -= 1;
            }
        }
        out.push(v);
    }
    out
}

fn two_packing_bound(g: &Graph, closed: &[Vec<usize>]) -> usize {
    let mut blocked = vec![false; g.n()];
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut count = 0;
    for v in order {
        if closed[v].iter().all(|&w| !blocked[w]) {
            count += 1;
            for &w in &closed[v] {
                blocked[w] = true;
                for &x in g.neighbors(w) {
                    blocked[x] = true;
                }
            }
        }
    }
    count.max(1)
}

struct Search<'a> {
    closed: &'a [Vec<usize>],
    max_cover: usize,
    best: Vec<usize>,
    lower: usize,
    chosen: Vec<usize>,
    cover_count: Vec<usize>,
    undominated: usize,
}

impl Search<'_> {
    fn add(&mut self, v: usize) {
        self.chosen.push(v);
        for &w in &self.closed[v] {
            if self.cover_count[w] == 0 {
                self.undominated -= 1;
            }
            self.cover_count[w] += 1;
        }
    }

    fn remove(&mut self) {
        let v = self.chosen.pop().unwrap();
        for &w in &self.closed[v] {
            self.cover_count[w] -= 1;
            if self.cover_count[w] == 0 {
                self.undominated += 1;
            }
        }
    }

    fn branch(&mut self) {
        if self.best.len() == self.lower {
            return;
        }
        if self.undominated == 0 {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        let needed = self.undominated.div_ceil(self.max_cover);
        if self.chosen.len() + needed >= self.best.len() {
            return;
        }
        let v = (0..self.cover_count.len()).find(|&v| self.cover_count[v] == 0).unwrap();
        let mut options = self.closed[v].clone();
        let gain = |s: &Self, w: usize| s.closed[w].iter().filter(|&&x| s.cover_count[x] == 0).count();
        options.sort_by_key(|&w| (std::cmp::Reverse(gain(self, w)), w));
        for w in options {
            self.add(w);
            self.branch();
            self.remove();
        }
    }
}

/// Independence number by branch and bound on bit masks (at most 128
/// vertices).
pub fn alpha_exact(g: &Graph) -> usize {
    let closed = g.closed_masks().expect("alpha_exact supports at most 128 vertices");
    fn go(closed: &[VertexMask], avail: VertexMask, size: usize, best: &mut usize) {
        if avail == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + avail.count_ones() as usize <= *best {
            return;
        }
        // Branch on a minimum-degree available vertex: it or one of its
        // available neighbours is in some maximum independent set.
        let v = mask_members(avail)
            .into_iter()
            .min_by_key(|&v| (closed[v] & avail).count_ones())
            .unwrap();
        let mut choices = closed[v] & avail;
        while choices != 0 {
            let w = choices.trailing_zeros() as usize;
            choices &= choices - 1;
            go(closed, avail & !closed[w], size + 1, best);
        }
    }
    let mut best = 0;
    go(&closed, g.full_mask(), 0, &mut best);
    best
}

/// Visits every dominating set of exactly `k` vertices (in no particular
/// numeric order); `visit` returns false to stop early.
pub(crate) fn for_each_dominating_k_set(g: &Graph, k: usize, mut visit: impl FnMut(VertexMask) -> bool) {
    let n = g.n();
    let closed = g.closed_masks().expect("mask size");
    // last[w]: largest id in N[w]; once it is decided, w must be dominated.
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); n];
    for w in 0..n {
        let last = 127 - closed[w].leading_zeros() as usize;
        due[last].push(w);
    }
    struct Ctx<'a, F> {
        n: usize,
        k: usize,
        closed: &'a [VertexMask],
        due: &'a [Vec<usize>],
        visit: F,
        stop: bool,
    }
    fn rec<F: FnMut(VertexMask) -> bool>(c: &mut Ctx<'_, F>, i: usize, set: VertexMask, size: usize, dom: VertexMask) {
        if c.stop {
            return;
        }
        if i == c.n {
            if size == c.k && !(c.visit)(set) {
                c.stop = true;
            }
            return;
        }
        for take in [true, false] {
            let (nset, nsize, ndom) = if take {
                if size == c.k {
                    continue;
                }
                (set | 1 << i, size + 1, dom | c.closed[i])
            } else {
                if size + (c.n - i - 1) < c.k {
                    continue;
                }
                (set, size, dom)
            };
            if c.due[i].iter().all(|&w| ndom >> w & 1 == 1) {
                rec(c, i + 1, nset, nsize, ndom);
            }
        }
    }
    let mut ctx = Ctx { n, k, closed: &closed, due: &due, visit: &mut visit, stop: false };
    rec(&mut ctx, 0, 0, 0, 0);
}

/// Collects [`for_each_dominating_k_set`] into ascending numeric order.
pub(crate) fn dominating_k_sets(g: &Graph, k: usize, limit: u64) -> Result<Vec<VertexMask>, u64> {
    let mut out = Vec::new();
    let mut over = false;
    for_each_dominating_k_set(g, k, |m| {
        out.push(m);
        if out.len() as u64 > limit {
            over = true;
            return false;
        }
        true
    });
    if over {
        return Err(out.len() as u64);
    }
    out.sort_unstable();
    Ok(out)
}

pub(crate) fn mask_is_dominating(closed: &[VertexMask], full: VertexMask, set: VertexMask) -> bool {
    closed_union(closed, set) == full
}
