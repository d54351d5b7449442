//! Live defence: attacks arrive one at a time and each is answered by a
//! guards move, either from the oracle's winning set or from a proven
//! strategy.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{apply_moves, verify_closure, ClosureResult, DefenseStrategy};
use crate::graph::Graph;
use crate::oracle::{mask_is_dominating, medn_feasible, Budget, GuardConfig, OracleError, WinningSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SessionError {
    #[error("vertex {vertex} is not in the graph (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{k} guards cannot defend this graph forever")]
    Infeasible { k: usize },
    #[error("strategy is not proven: {0}")]
    Unproven(String),
    #[error("no response to an attack on {attack}")]
    NoResponse { attack: usize },
    #[error("response to an attack on {attack} failed the safety re-check: {reason}")]
    UnsafeResponse { attack: usize, reason: String },
    #[error("configuration {0:?} is not one this defender can continue from")]
    UnknownConfig(Vec<usize>),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SessionMode {
    Oracle,
    Strategy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackOutcome {
    pub attack: usize,
    /// Guards that changed vertex, as `(from, to)`.
    pub moves: Vec<(usize, usize)>,
    pub config: GuardConfig,
}

#[derive(Debug, Clone)]
enum Engine {
    Oracle(WinningSet),
    Strategy(DefenseStrategy),
}

/// One defender. Not shared: callers serialise attacks on a session.
#[derive(Debug, Clone)]
pub struct DefenderSession {
    graph: Graph,
    k: usize,
    engine: Engine,
    config: GuardConfig,
    history: Vec<AttackOutcome>,
}

/// Oracle-backed session with `k` guards, starting from the least-encoded
/// configuration of the winning set.
pub fn interactive_defender(g: &Graph, k: usize, budget: &mut Budget) -> Result<DefenderSession, SessionError> {
    DefenderSession::oracle(g, k, budget)
}

impl DefenderSession {
    pub fn oracle(g: &Graph, k: usize, budget: &mut Budget) -> Result<Self, SessionError> {
        let ws = medn_feasible(g, k, budget)?;
        let Some(&first) = ws.masks().first() else {
            return Err(SessionError::Infeasible { k });
        };
        Ok(DefenderSession {
            graph: g.clone(),
            k,
            engine: Engine::Oracle(ws),
            config: GuardConfig::from_mask(first),
            history: Vec::new(),
        })
    }

    /// Session replaying `s`, which must pass [`verify_closure`] on `g`.
    pub fn with_strategy(g: &Graph, s: DefenseStrategy) -> Result<Self, SessionError> {
        if let ClosureResult::Counterexample { reason, .. } = verify_closure(g, &s).result {
            return Err(SessionError::Unproven(reason));
        }
        Ok(DefenderSession {
            graph: g.clone(),
            k: s.k,
            config: s.initial.clone(),
            engine: Engine::Strategy(s),
            history: Vec::new(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mode(&self) -> SessionMode {
        match self.engine {
            Engine::Oracle(_) => SessionMode::Oracle,
            Engine::Strategy(_) => SessionMode::Strategy,
        }
    }

    pub fn config(&self) -> &GuardConfig {
        &self.config
    }

    pub fn history(&self) -> &[AttackOutcome] {
        &self.history
    }

    /// Whether the current configuration lies in the oracle's winning set
    /// (always true for strategy sessions).
    pub fn in_winning_set(&self) -> bool {
        match &self.engine {
            Engine::Oracle(ws) => ws.contains(&self.config),
            Engine::Strategy(_) => true,
        }
    }

    /// Puts the session back into `config` with `history`, e.g. from a
    /// snapshot. The configuration must be one the defender can continue from.
    pub fn restore(&mut self, config: GuardConfig, history: Vec<AttackOutcome>) -> Result<(), SessionError> {
        let known = match &self.engine {
            Engine::Oracle(ws) => ws.contains(&config),
            Engine::Strategy(s) => config == s.initial || s.family_of(&config).is_some(),
        };
        if !known {
            return Err(SessionError::UnknownConfig(config.vertices().to_vec()));
        }
        self.config = config;
        self.history = history;
        Ok(())
    }

    /// Answers an attack on `vertex` and moves the guards. The response is
    /// re-checked (legal move, attacked vertex guarded, dominating) before
    /// the session state changes.
    pub fn attack(&mut self, vertex: usize) -> Result<AttackOutcome, SessionError> {
        let n = self.graph.n();
        if vertex >= n {
            return Err(SessionError::VertexOutOfRange { vertex, n });
        }
        let response = match &self.engine {
            Engine::Oracle(ws) => ws.respond(&self.config, vertex),
            Engine::Strategy(s) => s.respond(&self.config, vertex),
        };
        let Some((next, pairs)) = response else {
            return Err(SessionError::NoResponse { attack: vertex });
        };
        let moves: Vec<(usize, usize)> = pairs.into_iter().filter(|(a, b)| a != b).collect();
        let closed = self.graph.closed_masks().map_err(OracleError::from)?;
        let unsafe_response = |reason: String| SessionError::UnsafeResponse { attack: vertex, reason };
        let applied = apply_moves(&closed, self.config.mask(), &moves).map_err(unsafe_response)?;
        if applied != next.mask() {
            return Err(unsafe_response("moves do not produce the stated configuration".into()));
        }
        if !next.contains(vertex) {
            return Err(unsafe_response("attacked vertex left unguarded".into()));
        }
        if !mask_is_dominating(&closed, self.graph.full_mask(), applied) {
            return Err(unsafe_response("configuration is not dominating".into()));
        }
        self.config = next;
        let outcome = AttackOutcome { attack: vertex, moves, config: self.config.clone() };
        self.history.push(outcome.clone());
        Ok(outcome)
    }
}
