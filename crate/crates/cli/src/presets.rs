//! Named graphs for `graphRef` and the self-test.

use mguard::reductions::{reduce_3dm, reduce_x3c, ThreeDMInstance, X3CInstance};
use mguard::strategy::{strategy_3dm, strategy_x3c, DefenseStrategy};
use mguard::Graph;

pub const NAMES: &[&str] = &["p5", "k14", "c4", "sun3", "x3c-sample", "3dm-sample"];

/// Figure-style X3C instance on 9 elements with the single exact cover
/// `{0, 1, 3}`.
pub fn x3c_sample_instance() -> X3CInstance {
    X3CInstance { q: 3, triples: vec![[0, 1, 2], [3, 4, 5], [1, 2, 4], [6, 7, 8], [5, 6, 7]] }
}

/// Figure-style 3DM instance with three triples and the perfect matching
/// `{1, 2}`.
pub fn tdm_sample_instance() -> ThreeDMInstance {
    ThreeDMInstance { q: 2, triples: vec![[0, 0, 0], [0, 1, 0], [1, 0, 1]] }
}

/// The 3-sun: triangle 0, 1, 2 and vertex `3 + i` adjacent to the two
/// triangle vertices other than `i`.
pub fn sun3() -> Graph {
    Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 1), (3, 2), (4, 0), (4, 2), (5, 0), (5, 1)]).expect("valid")
}

pub fn graph(name: &str) -> Option<Graph> {
    Some(match name {
        "p5" => Graph::path(5),
        "k14" => Graph::star(4),
        "c4" => Graph::cycle(4),
        "sun3" => sun3(),
        "x3c-sample" => reduce_x3c(&x3c_sample_instance()).expect("valid instance").graph,
        "3dm-sample" => reduce_3dm(&tdm_sample_instance()).expect("valid instance").0.graph,
        _ => return None,
    })
}

/// Built-in strategy for the reduction presets.
pub fn strategy(name: &str) -> Option<DefenseStrategy> {
    match name {
        "x3c-sample" => strategy_x3c(&x3c_sample_instance(), &[0, 1, 3]).ok().map(|(_, s)| s),
        "3dm-sample" => strategy_3dm(&tdm_sample_instance(), &[1, 2]).ok().map(|(_, s)| s),
        _ => None,
    }
}
