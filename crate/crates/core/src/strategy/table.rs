//! Symbolic strategy tables and their expansion into concrete rules.
//!
//! A row maps a (family, attack class) pair to a cell of alternatives
//! separated by `:`. Each alternative is a comma-separated list of
//! simultaneous moves `a->b` over symbols that a [`Binder`] resolves against
//! the current configuration and attack. The first alternative whose
//! symbols all resolve, whose moves are legal and whose result covers the
//! attack and lies in a family is taken.
//!
//! A move whose two symbols resolve to the same vertex is dropped. This is
//! how a chain `z->t, x->z, s->x` with `x = z` collapses to `z->t, s->z`.

use std::collections::{HashMap, HashSet, VecDeque};

use super::{apply_moves, DefenseStrategy, Family, Rule, StrategyError};
use crate::graph::{Graph, VertexMask};
use crate::oracle::GuardConfig;

/// Expansion stops with an error past this many configurations.
pub(crate) const MAX_CONFIGS: usize = 1_000_000;

pub(crate) struct Row {
    pub family: &'static str,
    pub class: &'static str,
    pub cell: &'static str,
}

pub(crate) const fn row(family: &'static str, class: &'static str, cell: &'static str) -> Row {
    Row { family, class, cell }
}

pub(crate) trait Binder {
    fn family(&self, cfg: VertexMask) -> Option<&'static str>;
    fn attack_class(&self, cfg: VertexMask, family: &str, attack: usize) -> Option<&'static str>;
    fn bind(&self, cfg: VertexMask, family: &str, attack: usize, symbol: &str) -> Option<usize>;
}

pub(crate) struct Blueprint<'a> {
    pub k: usize,
    pub initial: Vec<usize>,
    pub invariant: Vec<usize>,
    pub families: &'a [(&'static str, &'static str)],
    pub rows: &'a [Row],
}

type Alternative = Vec<(String, String)>;

fn parse_cell(cell: &str) -> Result<Vec<Alternative>, StrategyError> {
    cell.split(':')
        .map(|alt| {
            alt.split(',')
                .map(|mv| {
                    let (a, b) = mv
                        .split_once("->")
                        .ok_or_else(|| StrategyError::Table(format!("move without arrow: {mv:?}")))?;
                    Ok((a.trim().to_string(), b.trim().to_string()))
                })
                .collect()
        })
        .collect()
}

pub(crate) fn compile(g: &Graph, bp: &Blueprint, binder: &dyn Binder) -> Result<DefenseStrategy, StrategyError> {
    let closed = g.closed_masks()?;
    let mut table: HashMap<(&str, &str), Vec<Alternative>> = HashMap::new();
    for r in bp.rows {
        if table.insert((r.family, r.class), parse_cell(r.cell)?).is_some() {
            return Err(StrategyError::Table(format!("duplicate row {} x {}", r.family, r.class)));
        }
    }
    let init = bp.initial.iter().fold(0u128, |m, &v| m | 1 << v);
    let mut rules = Vec::new();
    let mut seen = HashSet::from([init]);
    let mut queue = VecDeque::from([init]);
    while let Some(cfg) = queue.pop_front() {
        let Some(family) = binder.family(cfg) else { continue };
        for r in 0..g.n() {
            if cfg >> r & 1 == 1 {
                continue;
            }
            let Some(class) = binder.attack_class(cfg, family, r) else { continue };
            let Some(alts) = table.get(&(family, class)) else { continue };
            let chosen = alts.iter().find_map(|alt| {
                let mut moves = Vec::with_capacity(alt.len());
                for (a, b) in alt {
                    let from = binder.bind(cfg, family, r, a)?;
                    let to = binder.bind(cfg, family, r, b)?;
                    if from != to {
                        moves.push((from, to));
                    }
                }
                let next = apply_moves(&closed, cfg, &moves).ok()?;
                (next >> r & 1 == 1 && binder.family(next).is_some()).then_some((moves, next))
            });
            let Some((moves, next)) = chosen else { continue };
            rules.push(Rule {
                family: family.to_string(),
                config: GuardConfig::from_mask(cfg),
                attack_class: class.to_string(),
                attack: r,
                moves,
            });
            if seen.insert(next) {
                if seen.len() > MAX_CONFIGS {
                    return Err(StrategyError::TooManyConfigs(MAX_CONFIGS));
                }
                queue.push_back(next);
            }
        }
    }
    let mut s = DefenseStrategy {
        k: bp.k,
        initial: GuardConfig::from_mask(init),
        invariant: bp.invariant.clone(),
        families: bp
            .families
            .iter()
            .map(|&(id, description)| Family { id: id.to_string(), description: description.to_string() })
            .collect(),
        rules,
    };
    s.sort_rules();
    Ok(s)
}
