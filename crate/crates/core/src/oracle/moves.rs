use crate::graph::VertexMask;

const NONE: u8 = u8::MAX;

/// Decides whether the guards on `from` can move simultaneously onto `to`,
/// each along an edge or staying put: a perfect matching in the bipartite
/// graph of closed neighbourhoods. On success returns the `(from, to)` pairs
/// in ascending `from` order, including guards that stay.
///
/// The search starts from the identity pairing on `from ∩ to` and augments
/// from there, so guards that can stay usually do.
pub(crate) fn guards_move_pairs(closed: &[VertexMask], from: VertexMask, to: VertexMask) -> Option<Vec<(usize, usize)>> {
    let mut owner = [NONE; 128];
    if !match_into(closed, from, to, &mut owner) {
        return None;
    }
    let mut pairs: Vec<(usize, usize)> = (0..128)
        .filter(|&t| owner[t] != NONE)
        .map(|t| (owner[t] as usize, t))
        .collect();
    pairs.sort_unstable();
    Some(pairs)
}

/// Boolean form of [`guards_move_pairs`] without allocation.
pub(crate) fn guards_move_possible(closed: &[VertexMask], from: VertexMask, to: VertexMask) -> bool {
    let mut owner = [NONE; 128];
    match_into(closed, from, to, &mut owner)
}

fn match_into(closed: &[VertexMask], from: VertexMask, to: VertexMask, owner: &mut [u8; 128]) -> bool {
    if from.count_ones() != to.count_ones() {
        return false;
    }
    let mut stay = from & to;
    while stay != 0 {
        let v = stay.trailing_zeros() as usize;
        stay &= stay - 1;
        owner[v] = v as u8;
    }
    let mut movers = from & !to;
    while movers != 0 {
        let x = movers.trailing_zeros() as usize;
        movers &= movers - 1;
        let mut visited: VertexMask = 0;
        if !augment(closed, x, to, &mut visited, owner) {
            return false;
        }
    }
    true
}

fn augment(closed: &[VertexMask], x: usize, to: VertexMask, visited: &mut VertexMask, owner: &mut [u8; 128]) -> bool {
    let mut cand = closed[x] & to & !*visited;
    while cand != 0 {
        let t = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        *visited |= 1 << t;
        if owner[t] == NONE || augment(closed, owner[t] as usize, to, visited, owner) {
            owner[t] = x as u8;
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{mask_from, Graph};

    #[test]
    fn cycle_swap_needs_augmentation() {
        let g = Graph::cycle(4);
        let closed = g.closed_masks().unwrap();
        let pairs = guards_move_pairs(&closed, mask_from([0, 2]), mask_from([1, 3])).unwrap();
        assert_eq!(pairs.len(), 2);
        for (a, b) in pairs {
            assert!(g.has_edge(a, b));
        }
        // Guard at 1 must vacate for 0 -> 1 unless 1 stays; 0 cannot reach 2.
        let p3 = Graph::path(3);
        let closed = p3.closed_masks().unwrap();
        assert!(guards_move_possible(&closed, mask_from([0]), mask_from([1])));
        assert!(!guards_move_possible(&closed, mask_from([0]), mask_from([2])));
        assert!(guards_move_possible(&closed, mask_from([0, 1]), mask_from([1, 2])));
    }
}
