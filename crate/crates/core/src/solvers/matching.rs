//! Maximum-cardinality matching in general graphs (Edmonds' blossom
//! algorithm, O(V^3)).

use std::collections::VecDeque;

/// Maximum matching of the graph on `0..adj.len()`. Returns `mate[v]`.
/// Roots are tried in ascending order and neighbours in list order, so the
/// result is deterministic for a fixed input.
pub fn max_matching_general(adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    for root in 0..n {
        if mate[root].is_none() {
            if let Some(end) = find_augmenting_path(adj, &mate, root) {
                augment(&mut mate, end.0, &end.1);
            }
        }
    }
    mate
}

fn augment(mate: &mut [Option<usize>], mut v: usize, parent: &[Option<usize>]) {
    loop {
        let pv = parent[v].expect("path parent");
        let next = mate[pv];
        mate[v] = Some(pv);
        mate[pv] = Some(v);
        match next {
            Some(w) => v = w,
            None => break,
        }
    }
}

/// BFS from `root` over alternating trees with blossom contraction. Returns
/// the free endpoint reached and the parent array describing the path.
fn find_augmenting_path(adj: &[Vec<usize>], mate: &[Option<usize>], root: usize) -> Option<(usize, Vec<Option<usize>>)> {
    let n = adj.len();
    let mut used = vec![false; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut base: Vec<usize> = (0..n).collect();
    used[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &to in &adj[v] {
            if base[v] == base[to] || mate[v] == Some(to) {
                continue;
            }
            let to_is_outer = to == root || mate[to].is_some_and(|m| parent[m].is_some());
            if to_is_outer {
                let cur = lca(mate, &base, &parent, v, to);
                let mut in_blossom = vec![false; n];
                mark_path(mate, &base, &mut parent, &mut in_blossom, v, cur, to);
                mark_path(mate, &base, &mut parent, &mut in_blossom, to, cur, v);
                for i in 0..n {
                    if in_blossom[base[i]] {
                        base[i] = cur;
                        if !used[i] {
                            used[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[to].is_none() {
                parent[to] = Some(v);
                match mate[to] {
                    None => return Some((to, parent)),
                    Some(m) => {
                        used[m] = true;
                        queue.push_back(m);
                    }
                }
            }
        }
    }
    None
}

fn lca(mate: &[Option<usize>], base: &[usize], parent: &[Option<usize>], a: usize, b: usize) -> usize {
    let mut seen = vec![false; mate.len()];
    let mut a = a;
    loop {
        a = base[a];
        seen[a] = true;
        match mate[a] {
            None => break,
            Some(m) => a = parent[m].expect("outer vertex has a parent"),
        }
    }
    let mut b = b;
    loop {
        b = base[b];
        if seen[b] {
            return b;
        }
        b = parent[mate[b].expect("inner path")].expect("outer vertex has a parent");
    }
}

fn mark_path(
    mate: &[Option<usize>],
    base: &[usize],
    parent: &mut [Option<usize>],
    in_blossom: &mut [bool],
    mut v: usize,
    b: usize,
    mut child: usize,
) {
    while base[v] != b {
        let m = mate[v].expect("blossom vertex is matched");
        in_blossom[base[v]] = true;
        in_blossom[base[m]] = true;
        parent[v] = Some(child);
        child = m;
        v = parent[m].expect("outer vertex has a parent");
    }
}

pub fn matching_size(mate: &[Option<usize>]) -> usize {
    mate.iter().filter(|m| m.is_some()).count() / 2
}
