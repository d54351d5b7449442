//! Executable defence strategies taken from the constructive upper-bound
//! proofs, a closure verifier that checks a strategy defends forever, and
//! interactive defender sessions.
//!
//! A strategy is stored fully expanded: one rule per reachable
//! configuration and unoccupied attacked vertex. The symbolic tables that
//! produce these rules live next to each constructor.

mod gadgets;
mod session;
mod split;
mod table;

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexMask};
use crate::oracle::{guards_move_pairs, mask_is_dominating, GuardConfig, OracleError};
use crate::reductions::ReductionError;
use crate::solvers::SolverError;

pub use gadgets::{strategy_3dm, strategy_x3c};
pub use session::{interactive_defender, AttackOutcome, DefenderSession, SessionError, SessionMode};
pub use split::{strategy_k13, strategy_k14_2split, strategy_k14_3split};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("not an exact cover of the instance")]
    NotExactCover,
    #[error("not a perfect 3D matching of the instance")]
    NotPerfectMatching,
    #[error("strategy expansion exceeded {0} configurations")]
    TooManyConfigs(usize),
    #[error("malformed strategy table: {0}")]
    Table(String),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    pub id: String,
    pub description: String,
}

/// Response to an attack on `attack` while the guards sit on `config`.
/// `moves` lists only guards that change vertex; all moves are simultaneous.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Rule {
    pub family: String,
    pub config: GuardConfig,
    pub attack_class: String,
    pub attack: usize,
    pub moves: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefenseStrategy {
    pub k: usize,
    pub initial: GuardConfig,
    /// Vertices guarded in every configuration.
    pub invariant: Vec<usize>,
    pub families: Vec<Family>,
    pub rules: Vec<Rule>,
}

impl DefenseStrategy {
    /// Rule for `attack` in `config`; `None` for an occupied vertex or a
    /// missing rule.
    pub fn rule(&self, config: &GuardConfig, attack: usize) -> Option<&Rule> {
        self.rules
            .binary_search_by(|r| (r.config.mask(), r.attack).cmp(&(config.mask(), attack)))
            .ok()
            .map(|i| &self.rules[i])
    }

    /// Family of a configuration the strategy has rules for.
    pub fn family_of(&self, config: &GuardConfig) -> Option<&str> {
        let m = config.mask();
        let i = self.rules.partition_point(|r| r.config.mask() < m);
        self.rules.get(i).filter(|r| r.config.mask() == m).map(|r| r.family.as_str())
    }

    pub(crate) fn sort_rules(&mut self) {
        self.rules.sort_by_key(|r| (r.config.mask(), r.attack));
    }

    /// Applies the rule for `attack` in `config` and returns the new
    /// configuration; an attack on a guarded vertex leaves it unchanged.
    pub fn respond(&self, config: &GuardConfig, attack: usize) -> Option<(GuardConfig, Vec<(usize, usize)>)> {
        if config.contains(attack) {
            return Some((config.clone(), Vec::new()));
        }
        let rule = self.rule(config, attack)?;
        let mut m = config.mask();
        for &(from, _) in &rule.moves {
            m &= !(1 << from);
        }
        for &(_, to) in &rule.moves {
            m |= 1 << to;
        }
        Some((GuardConfig::from_mask(m), rule.moves.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum ClosureResult {
    Proven,
    Counterexample {
        config: GuardConfig,
        /// `None` when the configuration itself is at fault.
        attack: Option<usize>,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClosureReport {
    pub visited_configs: usize,
    #[serde(flatten)]
    pub result: ClosureResult,
}

impl ClosureReport {
    pub fn is_proven(&self) -> bool {
        self.result == ClosureResult::Proven
    }
}

/// Explores every configuration reachable from the initial one under every
/// attack sequence and checks each response: the rule exists, moves are
/// legal and simultaneous, the attacked vertex ends up guarded, the result
/// dominates, keeps the invariant, and belongs to a family.
pub fn verify_closure(g: &Graph, s: &DefenseStrategy) -> ClosureReport {
    let mut visited = 0;
    let result = explore(g, s, &mut visited);
    ClosureReport { visited_configs: visited, result }
}

fn counterexample(config: VertexMask, attack: Option<usize>, reason: impl Into<String>) -> ClosureResult {
    ClosureResult::Counterexample { config: GuardConfig::from_mask(config), attack, reason: reason.into() }
}

fn explore(g: &Graph, s: &DefenseStrategy, visited: &mut usize) -> ClosureResult {
    let n = g.n();
    let init = s.initial.mask();
    let closed = match g.closed_masks() {
        Ok(c) => c,
        Err(e) => return counterexample(0, None, e.to_string()),
    };
    if s.initial.vertices().iter().any(|&v| v >= n) {
        return counterexample(init, None, "initial configuration names a vertex outside the graph");
    }
    if s.initial.len() != s.k {
        return counterexample(init, None, format!("initial configuration has {} guards, expected {}", s.initial.len(), s.k));
    }
    if let Some(&v) = s.invariant.iter().find(|&&v| v >= n) {
        return counterexample(init, None, format!("invariant vertex {v} is outside the graph"));
    }
    let invariant: VertexMask = s.invariant.iter().fold(0, |m, &v| m | 1 << v);
    let family_ids: HashSet<&str> = s.families.iter().map(|f| f.id.as_str()).collect();
    let mut index: HashMap<(VertexMask, usize), &Rule> = HashMap::new();
    let mut family_of: HashMap<VertexMask, &str> = HashMap::new();
    for r in &s.rules {
        let m = r.config.mask();
        if index.insert((m, r.attack), r).is_some() {
            return counterexample(m, Some(r.attack), "two rules for the same configuration and attack");
        }
        if !family_ids.contains(r.family.as_str()) {
            return counterexample(m, Some(r.attack), format!("rule names unknown family {}", r.family));
        }
        if *family_of.entry(m).or_insert(&r.family) != r.family {
            return counterexample(m, None, "configuration is assigned to two families");
        }
    }
    let full = g.full_mask();
    let check = |cfg: VertexMask| -> Result<(), String> {
        if !mask_is_dominating(&closed, full, cfg) {
            let missed = (0..n).find(|&z| closed[z] & cfg == 0).unwrap_or(0);
            return Err(format!("configuration does not dominate vertex {missed}"));
        }
        if cfg & invariant != invariant {
            return Err("configuration does not contain the invariant set".into());
        }
        if cfg != full && !family_of.contains_key(&cfg) {
            return Err("configuration is not in any family".into());
        }
        Ok(())
    };
    *visited = 1;
    if let Err(reason) = check(init) {
        return counterexample(init, None, reason);
    }
    let mut seen: HashSet<VertexMask> = HashSet::from([init]);
    let mut queue = VecDeque::from([init]);
    while let Some(cfg) = queue.pop_front() {
        for r in 0..n {
            if cfg >> r & 1 == 1 {
                continue;
            }
            let Some(rule) = index.get(&(cfg, r)) else {
                return counterexample(cfg, Some(r), "no rule for this attack");
            };
            let next = match apply_moves(&closed, cfg, &rule.moves) {
                Ok(next) => next,
                Err(reason) => return counterexample(cfg, Some(r), reason),
            };
            if next >> r & 1 == 0 {
                return counterexample(cfg, Some(r), "attacked vertex is not guarded after the response");
            }
            // Independent check of the same move with the matching routine.
            if guards_move_pairs(&closed, cfg, next).is_none() {
                return counterexample(cfg, Some(r), "response is not a guards move");
            }
            if seen.insert(next) {
                if let Err(reason) = check(next) {
                    return counterexample(cfg, Some(r), format!("after the response: {reason}"));
                }
                *visited += 1;
                queue.push_back(next);
            }
        }
    }
    ClosureResult::Proven
}

/// Applies simultaneous moves; every source must hold a guard and move at
/// most one step, and no two guards may end on the same vertex.
pub(crate) fn apply_moves(closed: &[VertexMask], cfg: VertexMask, moves: &[(usize, usize)]) -> Result<VertexMask, String> {
    let n = closed.len();
    let mut sources: VertexMask = 0;
    let mut targets: VertexMask = 0;
    for &(from, to) in moves {
        if from >= n || to >= n {
            return Err(format!("move {from}->{to} leaves the graph"));
        }
        if cfg >> from & 1 == 0 {
            return Err(format!("no guard on {from}"));
        }
        if sources >> from & 1 == 1 {
            return Err(format!("guard on {from} moves twice"));
        }
        if closed[from] >> to & 1 == 0 {
            return Err(format!("guard on {from} cannot reach {to}"));
        }
        if targets >> to & 1 == 1 {
            return Err(format!("two guards move to {to}"));
        }
        sources |= 1 << from;
        targets |= 1 << to;
    }
    let stay = cfg & !sources;
    if stay & targets != 0 {
        return Err(format!("a guard moves onto occupied vertex {}", (stay & targets).trailing_zeros()));
    }
    Ok(stay | targets)
}
