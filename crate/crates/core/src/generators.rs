//! Graph families for the solver sweeps. Split graphs are described by the
//! independent neighbourhood of each clique vertex: clique vertices get ids
//! `0..c`, independent vertices `c..c + i`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{is_k1t_free, split_partition, Graph};

/// Split graph whose clique vertex `j` is adjacent to the independent
/// vertices listed in `types[j]` (indices into `0..independent`).
pub fn split_from_types(types: &[Vec<usize>], independent: usize) -> Graph {
    let c = types.len();
    let mut g = Graph::new(c + independent).expect("nonempty");
    for u in 0..c {
        for v in u + 1..c {
            g.add_edge(u, v).unwrap();
        }
        for &i in &types[u] {
            g.add_edge(u, c + i).unwrap();
        }
    }
    g
}

/// Connected, non-complete, and the clique side is maximal (no independent
/// vertex sees every clique vertex).
fn usable(types: &[Vec<usize>], independent: usize) -> bool {
    let c = types.len();
    (0..independent).all(|i| {
        let d = types.iter().filter(|t| t.contains(&i)).count();
        d >= 1 && d < c
    }) && independent > 0
}

/// Every connected claw-free split graph on at most `max_n` vertices, up to
/// relabelling (duplicates across isomorphic descriptions are possible).
///
/// Claw-free split graphs either have every clique vertex adjacent to at
/// most one independent vertex, or have at most three independent vertices;
/// both shapes are enumerated by multisets of neighbourhood types.
pub fn claw_free_split_family(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    // Δ^I <= 1: independent vertex i has counts[i] >= 1 private clique
    // neighbours (non-increasing), plus `free` clique vertices.
    for independent in 1..max_n {
        for counts in partitions_into(max_n - independent, independent) {
            let used: usize = counts.iter().sum();
            for free in 0..=(max_n - independent - used) {
                let mut types: Vec<Vec<usize>> = Vec::new();
                for (i, &k) in counts.iter().enumerate() {
                    types.extend(std::iter::repeat_n(vec![i], k));
                }
                types.extend(std::iter::repeat_n(Vec::new(), free));
                if types.len() >= 2 && usable(&types, independent) {
                    out.push(split_from_types(&types, independent));
                }
            }
        }
    }
    // Δ^I = 2 with |I| in {2, 3}.
    for independent in 2..=3usize {
        let mut kinds: Vec<Vec<usize>> = vec![Vec::new()];
        kinds.extend((0..independent).map(|i| vec![i]));
        for a in 0..independent {
            for b in a + 1..independent {
                kinds.push(vec![a, b]);
            }
        }
        for clique in 2..=(max_n - independent) {
            for multiset in multisets(kinds.len(), clique) {
                let types: Vec<Vec<usize>> = multiset.iter().map(|&k| kinds[k].clone()).collect();
                if types.iter().any(|t| t.len() == 2) && usable(&types, independent) {
                    let g = split_from_types(&types, independent);
                    if is_k1t_free(&g, 3) {
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}

/// Non-increasing sequences of `parts` positive integers with sum at most
/// `total`.
fn partitions_into(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, parts: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            out.push(cur.clone());
            return;
        }
        if left < parts {
            return;
        }
        for k in (1..=cap.min(left - (parts - 1))).rev() {
            cur.push(k);
            rec(left - k, parts - 1, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts <= total {
        rec(total, parts, total, &mut Vec::new(), &mut out);
    }
    out
}

/// Non-decreasing sequences of length `len` over `0..kinds`.
fn multisets(kinds: usize, len: usize) -> Vec<Vec<usize>> {
    fn rec(kinds: usize, len: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for k in from..kinds {
            cur.push(k);
            rec(kinds, len, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(kinds, len, 0, &mut Vec::new(), &mut out);
    out
}

fn random_types<R: Rng>(rng: &mut R, clique: usize, independent: usize, max_deg: usize) -> Vec<Vec<usize>> {
    let pool: Vec<usize> = (0..independent).collect();
    (0..clique)
        .map(|_| {
            let d = rng.gen_range(0..=max_deg.min(independent));
            let mut t: Vec<usize> = pool.choose_multiple(rng, d).copied().collect();
            t.sort_unstable();
            t
        })
        .collect()
}

/// Random connected claw-free split graph with at most `max_n` vertices.
pub fn random_claw_free_split<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    loop {
        let independent = rng.gen_range(1..=max_n - 2);
        let clique = rng.gen_range(2..=max_n - independent);
        let max_deg = if independent <= 3 && rng.gen_bool(0.5) { 2 } else { 1 };
        let types = random_types(rng, clique, independent, max_deg);
        if usable(&types, independent) {
            let g = split_from_types(&types, independent);
            if is_k1t_free(&g, 3) {
                return g;
            }
        }
    }
}

/// Random connected 2-split graph (automatically `K_{1,4}`-free) with at
/// most `max_n` vertices, `Δ^I = 2` under the canonical partition, and not a
/// star.
pub fn random_k14_free_2split<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    loop {
        let independent = rng.gen_range(2..=max_n - 2);
        let clique = rng.gen_range(2..=max_n - independent);
        let types = random_types(rng, clique, independent, 2);
        if !usable(&types, independent) {
            continue;
        }
        let g = split_from_types(&types, independent);
        if g.is_star() {
            continue;
        }
        if split_partition(&g).is_some_and(|p| p.delta_i() == 2) {
            return g;
        }
    }
}

/// Random connected `K_{1,4}`-free 3-split graph with at most `max_n`
/// vertices and `Δ^I = 3` under the canonical partition.
///
/// Clique vertex 0 sees independent vertices `0, 1, 2`; the other clique
/// vertices mostly see one or two of those plus up to two further
/// independent vertices, so all three shapes of `Q` come up regularly.
pub fn random_k14_free_3split<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    loop {
        let independent = rng.gen_range(3..=(max_n - 3).min(7));
        let clique = rng.gen_range(2..=max_n - independent);
        let inner: Vec<usize> = (0..3).collect();
        let outer: Vec<usize> = (3..independent).collect();
        let mut types = vec![inner.clone()];
        for _ in 1..clique {
            let a = [0, 1, 1, 1, 2][rng.gen_range(0..5)];
            let b = [0, 1, 1, 1, 2][rng.gen_range(0..5)].min(outer.len());
            let mut t: Vec<usize> = inner.choose_multiple(rng, a).copied().collect();
            t.extend(outer.choose_multiple(rng, b).copied());
            t.truncate(3);
            t.sort_unstable();
            types.push(t);
        }
        types.shuffle(rng);
        if !usable(&types, independent) {
            continue;
        }
        let g = split_from_types(&types, independent);
        if g.is_star() || !is_k1t_free(&g, 4) {
            continue;
        }
        if split_partition(&g).is_some_and(|p| p.delta_i() == 3) {
            return g;
        }
    }
}
