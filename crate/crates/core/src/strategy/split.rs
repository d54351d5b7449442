//! Strategies for claw-free and `K_{1,4}`-free split graphs.

use super::table::{compile, row, Binder, Blueprint, Row};
use super::{DefenseStrategy, StrategyError};
use crate::graph::{Graph, SplitPartition, VertexMask};
use crate::solvers::{solve_k13_free, solve_k14_2split, solve_k14_3split, QClass};

const K13_FAMILIES: &[(&str, &str)] = &[(
    "D",
    "the guards hold a system of distinct representatives of the independent vertices \
     (a guard on an independent vertex represents itself), plus one extra clique guard \
     when some clique vertex has no independent neighbour",
)];

const K13_ROWS: &[Row] = &[row("D", "i_v", "g_v->i_v"), row("D", "c_v", "f->c_v : g_y->c_v")];

struct SdrBinder<'a> {
    g: &'a Graph,
    p: &'a SplitPartition,
    /// Number of guards outside the representative system (0 or 1).
    spare: usize,
}

struct Assignment {
    /// `guard[i]` represents `p.independent()[i]`.
    guard: Vec<usize>,
    floater: Option<usize>,
}

impl SdrBinder<'_> {
    fn assign(&self, cfg: VertexMask) -> Option<Assignment> {
        let ind = self.p.independent();
        let mut guard = vec![usize::MAX; ind.len()];
        let mut owner: Vec<Option<usize>> = vec![None; self.g.n()];
        for (i, &y) in ind.iter().enumerate() {
            if cfg >> y & 1 == 1 {
                guard[i] = y;
                owner[y] = Some(i);
            }
        }
        fn augment(b: &SdrBinder, cfg: VertexMask, i: usize, seen: &mut [bool], guard: &mut [usize], owner: &mut [Option<usize>]) -> bool {
            let y = b.p.independent()[i];
            for &c in b.g.neighbors(y) {
                if cfg >> c & 1 == 0 || seen[c] {
                    continue;
                }
                seen[c] = true;
                if owner[c].is_none_or(|j| augment(b, cfg, j, seen, guard, owner)) {
                    owner[c] = Some(i);
                    guard[i] = c;
                    return true;
                }
            }
            false
        }
        for i in 0..ind.len() {
            if guard[i] == usize::MAX {
                let mut seen = vec![false; self.g.n()];
                if !augment(self, cfg, i, &mut seen, &mut guard, &mut owner) {
                    return None;
                }
            }
        }
        let spare: Vec<usize> = (0..self.g.n()).filter(|&v| cfg >> v & 1 == 1 && owner[v].is_none()).collect();
        if spare.len() != self.spare || spare.iter().any(|&v| !self.p.in_clique(v)) {
            return None;
        }
        Some(Assignment { guard, floater: spare.first().copied() })
    }

    fn representative(&self, a: &Assignment, y: usize) -> Option<usize> {
        let i = self.p.independent().binary_search(&y).ok()?;
        Some(a.guard[i])
    }
}

impl Binder for SdrBinder<'_> {
    fn family(&self, cfg: VertexMask) -> Option<&'static str> {
        self.assign(cfg).map(|_| "D")
    }

    fn attack_class(&self, _: VertexMask, _: &str, attack: usize) -> Option<&'static str> {
        Some(if self.p.in_clique(attack) { "c_v" } else { "i_v" })
    }

    fn bind(&self, cfg: VertexMask, _: &str, attack: usize, symbol: &str) -> Option<usize> {
        match symbol {
            "i_v" | "c_v" => Some(attack),
            "g_v" => self.representative(&self.assign(cfg)?, attack),
            "f" => self.assign(cfg)?.floater,
            "g_y" => {
                let y = *self.p.i_neighbors(attack).first()?;
                self.representative(&self.assign(cfg)?, y)
            }
            _ => None,
        }
    }
}

/// Strategy for a connected claw-free split graph with
/// `|I| + [some clique vertex has no independent neighbour]` guards.
pub fn strategy_k13(g: &Graph, p: &SplitPartition) -> Result<DefenseStrategy, StrategyError> {
    let k = solve_k13_free(g, p)?;
    let spare = k - p.independent().len();
    let mut initial = p.independent().to_vec();
    if spare == 1 {
        let f = p.clique().iter().copied().find(|&c| p.d_i(c) == 0).expect("uncovered clique vertex");
        initial.push(f);
    }
    let binder = SdrBinder { g, p, spare };
    let bp = Blueprint { k, initial, invariant: Vec::new(), families: K13_FAMILIES, rows: K13_ROWS };
    compile(g, &bp, &binder)
}

const FLOATING_FAMILIES: &[(&str, &str)] = &[
    ("D1", "the base set plus one guard on an independent vertex"),
    ("D2", "the base set plus one guard on a clique vertex outside the base"),
];

const FLOATING_ROWS: &[Row] = &[
    row("D1", "c_v", "v*->c_v, i*->v*"),
    row("D2", "c_v", "c*->c_v"),
    row("D1", "i_v", "v_i->i_v, v*->v_i, i*->v* : v_i->i_v, i*->v_i"),
    row("D2", "i_v", "v_i->i_v, c*->v_i"),
];

/// A fixed clique base `B` that dominates the independent side, plus one
/// floating guard.
struct FloatingBinder<'a> {
    g: &'a Graph,
    p: &'a SplitPartition,
    base: VertexMask,
}

impl FloatingBinder<'_> {
    fn floater(&self, cfg: VertexMask) -> Option<usize> {
        let extra = cfg & !self.base;
        (cfg & self.base == self.base && extra.count_ones() == 1).then(|| extra.trailing_zeros() as usize)
    }

    fn least_base_neighbor(&self, v: usize) -> Option<usize> {
        self.g.neighbors(v).iter().copied().find(|&c| self.base >> c & 1 == 1)
    }
}

impl Binder for FloatingBinder<'_> {
    fn family(&self, cfg: VertexMask) -> Option<&'static str> {
        let f = self.floater(cfg)?;
        Some(if self.p.in_clique(f) { "D2" } else { "D1" })
    }

    fn attack_class(&self, _: VertexMask, _: &str, attack: usize) -> Option<&'static str> {
        Some(if self.p.in_clique(attack) { "c_v" } else { "i_v" })
    }

    fn bind(&self, cfg: VertexMask, family: &str, attack: usize, symbol: &str) -> Option<usize> {
        match (symbol, family) {
            ("c_v" | "i_v", _) => Some(attack),
            ("i*", "D1") | ("c*", "D2") => self.floater(cfg),
            ("v*", "D1") => self.least_base_neighbor(self.floater(cfg)?),
            ("v_i", _) => self.least_base_neighbor(attack),
            _ => None,
        }
    }
}

fn floating_strategy(g: &Graph, p: &SplitPartition, base: Vec<usize>) -> Result<DefenseStrategy, StrategyError> {
    let mut base = base;
    base.sort_unstable();
    base.dedup();
    let mask = base.iter().fold(0u128, |m, &v| m | 1 << v);
    let mut initial = base.clone();
    initial.push(p.independent()[0]);
    let binder = FloatingBinder { g, p, base: mask };
    let bp = Blueprint { k: base.len() + 1, initial, invariant: base, families: FLOATING_FAMILIES, rows: FLOATING_ROWS };
    compile(g, &bp, &binder)
}

/// Least clique neighbour of each vertex of `i_prime`.
fn least_reps(g: &Graph, i_prime: &[usize]) -> Vec<usize> {
    i_prime.iter().map(|&v| g.neighbors(v)[0]).collect()
}

/// Strategy for a connected `K_{1,4}`-free 2-split graph: base `L` plus one
/// clique neighbour of each vertex of `I'`.
pub fn strategy_k14_2split(g: &Graph, p: &SplitPartition) -> Result<DefenseStrategy, StrategyError> {
    let (_, red) = solve_k14_2split(g, p)?;
    let mut base = red.l.clone();
    base.extend(least_reps(g, &red.i_prime));
    floating_strategy(g, p, base)
}

/// Strategy for a connected `K_{1,4}`-free 3-split graph. The base is `L`
/// plus one representative per vertex of `I'`, chosen so that it also
/// dominates `N^I(x)` (Type I and II), or extended by `x` (neither type).
pub fn strategy_k14_3split(g: &Graph, p: &SplitPartition) -> Result<DefenseStrategy, StrategyError> {
    let (_, an) = solve_k14_3split(g, p)?;
    let red = &an.reduced;
    let mut reps = least_reps(g, &red.i_prime);
    // A clique vertex outside L has at most one I'-neighbour; make it the
    // representative of that vertex.
    let mut prefer = |b: usize| {
        if red.l.contains(&b) {
            return;
        }
        if let Some(i) = red.i_prime.iter().position(|&v| g.has_edge(v, b)) {
            reps[i] = b;
        }
    };
    match &an.class {
        QClass::TypeI { matching } => matching.iter().for_each(|&(_, b)| prefer(b)),
        QClass::TypeII { c, e, .. } => {
            prefer(*c);
            prefer(*e);
        }
        QClass::Neither => {}
    }
    let mut base = red.l.clone();
    base.extend(reps);
    if an.class == QClass::Neither {
        base.push(an.x);
    }
    floating_strategy(g, p, base)
}
