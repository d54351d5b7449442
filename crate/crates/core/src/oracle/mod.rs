//! Exact, exponential-time ground truth: the domination number, the
//! independence number, and the eternal and m-eternal domination numbers via
//! greatest fixed points over guard configurations.

mod domination;
mod fixpoint;
mod moves;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{chordal_max_independent_set, mask_from, mask_members, Graph, GraphError, VertexMask};

pub use domination::{alpha_exact, gamma_exact, is_dominating, min_dominating_set};
pub use fixpoint::{winning_set, Model, WinningSet};

pub(crate) use domination::mask_is_dominating;
pub(crate) use moves::guards_move_pairs;

/// Default cap on configuration-pair tests.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("budget of {limit} configuration-pair tests exceeded")]
    BudgetExceeded { limit: u64 },
    #[error("configurations have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{what}: oracle gives {oracle}, closed form gives {fast}")]
    Disagreement { what: &'static str, oracle: usize, fast: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Work counter shared by the oracle calls of one computation. One unit is
/// one configuration enumerated or one pair of configurations tested.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.used
    }

    pub fn charge(&mut self, units: u64) -> Result<(), OracleError> {
        self.used = self.used.saturating_add(units);
        if self.used > self.limit {
            return Err(self.exhaust());
        }
        Ok(())
    }

    fn exhaust(&mut self) -> OracleError {
        self.used = self.limit;
        OracleError::BudgetExceeded { limit: self.limit }
    }
}

/// A set of guarded vertices, sorted, one guard per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GuardConfig(Vec<usize>);

impl GuardConfig {
    /// Sorts; rejects repeated vertices.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self, OracleError> {
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(OracleError::Precondition(format!("vertex {} holds two guards", w[0])));
        }
        Ok(GuardConfig(vertices))
    }

    pub fn from_mask(m: VertexMask) -> Self {
        GuardConfig(mask_members(m))
    }

    pub fn mask(&self) -> VertexMask {
        mask_from(self.0.iter().copied())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn check_in(&self, g: &Graph) -> Result<(), OracleError> {
        g.ensure_mask_size()?;
        match self.0.iter().find(|&&v| v >= g.n()) {
            Some(&v) => Err(GraphError::VertexOutOfRange { id: v, n: g.n() }.into()),
            None => Ok(()),
        }
    }
}

/// Pairs every guard of `d` with a vertex of `d2` in its closed
/// neighbourhood, if possible. Pairs are `(from, to)` in ascending `from`
/// order and include guards that stay.
pub fn guards_move(g: &Graph, d: &GuardConfig, d2: &GuardConfig) -> Result<Option<Vec<(usize, usize)>>, OracleError> {
    if d.len() != d2.len() {
        return Err(OracleError::SizeMismatch(d.len(), d2.len()));
    }
    d.check_in(g)?;
    d2.check_in(g)?;
    Ok(guards_move_pairs(&g.closed_masks()?, d.mask(), d2.mask()))
}

pub fn guards_move_reachable(g: &Graph, d: &GuardConfig, d2: &GuardConfig) -> Result<bool, OracleError> {
    Ok(guards_move(g, d, d2)?.is_some())
}

/// Winning set for `k` guards in the all-guards-move model; nonempty iff
/// `γ_m^∞(g) <= k`.
pub fn medn_feasible(g: &Graph, k: usize, budget: &mut Budget) -> Result<WinningSet, OracleError> {
    winning_set(g, k, Model::AllGuards, budget)
}

/// `γ_m^∞(g)`, summed over connected components.
pub fn medn_oracle(g: &Graph, budget: &mut Budget) -> Result<usize, OracleError> {
    fixpoint::least_guards(g, Model::AllGuards, budget)
}

/// Winning set for `k` guards when one guard moves per attack.
pub fn edn_feasible(g: &Graph, k: usize, budget: &mut Budget) -> Result<WinningSet, OracleError> {
    winning_set(g, k, Model::OneGuard, budget)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdnReport {
    pub value: usize,
    /// `α(g)` from the chordal algorithm, when `g` is chordal.
    pub chordal_alpha: Option<usize>,
}

/// `γ^∞(g)` by fixed point. On chordal graphs the value must equal `α(g)`;
/// a mismatch is reported as [`OracleError::Disagreement`].
pub fn edn_oracle(g: &Graph, budget: &mut Budget) -> Result<EdnReport, OracleError> {
    let value = fixpoint::least_guards(g, Model::OneGuard, budget)?;
    let chordal_alpha = chordal_max_independent_set(g).ok().map(|s| s.len());
    if let Some(a) = chordal_alpha {
        if a != value {
            return Err(OracleError::Disagreement { what: "eternal domination on a chordal graph", oracle: value, fast: a });
        }
    }
    Ok(EdnReport { value, chordal_alpha })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(v: &[usize]) -> GuardConfig {
        GuardConfig::new(v.to_vec()).unwrap()
    }

    #[test]
    fn guards_move_examples() {
        let p3 = Graph::path(3);
        assert!(guards_move_reachable(&p3, &cfg(&[0]), &cfg(&[0])).unwrap());
        assert!(guards_move_reachable(&p3, &cfg(&[0]), &cfg(&[1])).unwrap());
        assert!(!guards_move_reachable(&p3, &cfg(&[0]), &cfg(&[2])).unwrap());
        assert_eq!(guards_move(&p3, &cfg(&[0]), &cfg(&[1, 2])), Err(OracleError::SizeMismatch(1, 2)));
        let c4 = Graph::cycle(4);
        let pairs = guards_move(&c4, &cfg(&[0, 2]), &cfg(&[1, 3])).unwrap().unwrap();
        assert!(pairs.iter().all(|&(a, b)| c4.has_edge(a, b)));
    }

    #[test]
    fn small_oracle_values() {
        let mut b = Budget::default();
        assert!(!medn_feasible(&Graph::complete(5), 1, &mut b).unwrap().is_empty());
        assert!(medn_feasible(&Graph::star(4), 1, &mut b).unwrap().is_empty());
        assert!(!medn_feasible(&Graph::star(4), 2, &mut b).unwrap().is_empty());
        assert!(medn_feasible(&Graph::path(5), 2, &mut b).unwrap().is_empty());
        assert!(!medn_feasible(&Graph::path(5), 3, &mut b).unwrap().is_empty());
        assert_eq!(medn_oracle(&Graph::complete(6), &mut b).unwrap(), 1);
        assert_eq!(medn_oracle(&Graph::path(5), &mut b).unwrap(), 3);
        assert_eq!(medn_oracle(&Graph::star(3), &mut b).unwrap(), 2);
        assert_eq!(edn_oracle(&Graph::complete(4), &mut b).unwrap().value, 1);
        assert_eq!(edn_oracle(&Graph::cycle(4), &mut b).unwrap().value, 2);
        assert_eq!(edn_oracle(&Graph::path(5), &mut b).unwrap().value, 3);
    }

    #[test]
    fn budget_is_distinct_from_infeasible() {
        let mut b = Budget::new(10);
        assert_eq!(medn_oracle(&Graph::cycle(8), &mut b), Err(OracleError::BudgetExceeded { limit: 10 }));
    }

    #[test]
    fn respond_stays_inside_the_winning_set() {
        let g = Graph::path(5);
        let mut b = Budget::default();
        let ws = medn_feasible(&g, 3, &mut b).unwrap();
        let mut cur = ws.configs()[0].clone();
        for step in 0..50 {
            let r = (step * 7 + 3) % 5;
            let (next, pairs) = ws.respond(&cur, r).unwrap();
            assert!(next.contains(r));
            assert!(ws.contains(&next));
            assert!(pairs.iter().all(|&(a, b)| g.in_closed_nbhd(a, b)));
            cur = next;
        }
    }
}
