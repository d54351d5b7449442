use std::collections::HashMap;

use super::domination::{closed_union, dominating_k_sets};
use super::moves::{guards_move_pairs, guards_move_possible};
use super::{Budget, GuardConfig, OracleError};
use crate::graph::{mask_members, Graph, VertexMask};

/// Which guards may move in response to an attack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    /// Every guard may move one step (m-eternal domination).
    AllGuards,
    /// Exactly one guard moves one step (eternal domination).
    OneGuard,
}

/// Greatest fixed point of safe configurations for `k` guards.
#[derive(Debug, Clone)]
pub struct WinningSet {
    pub k: usize,
    pub model: Model,
    configs: Vec<VertexMask>,
    closed: Vec<VertexMask>,
}

impl WinningSet {
    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    /// Members in ascending encoding order.
    pub fn masks(&self) -> &[VertexMask] {
        &self.configs
    }

    pub fn configs(&self) -> Vec<GuardConfig> {
        self.configs.iter().map(|&m| GuardConfig::from_mask(m)).collect()
    }

    pub fn contains(&self, c: &GuardConfig) -> bool {
        self.configs.binary_search(&c.mask()).is_ok()
    }

    /// Least-encoded configuration in the set that contains `attack` and is
    /// one transition away from `current`, with the guard pairing used. An
    /// attack on an occupied vertex is answered by staying put.
    pub fn respond(&self, current: &GuardConfig, attack: usize) -> Option<(GuardConfig, Vec<(usize, usize)>)> {
        let cur = current.mask();
        if attack >= self.closed.len() {
            return None;
        }
        if cur >> attack & 1 == 1 {
            let stay = current.vertices().iter().map(|&v| (v, v)).collect();
            return Some((current.clone(), stay));
        }
        for &next in &self.configs {
            if next >> attack & 1 == 0 || !self.step_allowed(cur, next) {
                continue;
            }
            if let Some(pairs) = guards_move_pairs(&self.closed, cur, next) {
                return Some((GuardConfig::from_mask(next), pairs));
            }
        }
        None
    }

    fn step_allowed(&self, from: VertexMask, to: VertexMask) -> bool {
        match self.model {
            Model::AllGuards => true,
            Model::OneGuard => {
                let gone = from & !to;
                let came = to & !from;
                gone.count_ones() <= 1
                    && came.count_ones() == gone.count_ones()
                    && (gone == 0 || self.closed[gone.trailing_zeros() as usize] & came != 0)
            }
        }
    }
}

fn binomial_at_most(n: usize, k: usize, cap: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > cap as u128 {
            return cap + 1;
        }
    }
    acc as usize
}

/// Calls `f` on every `k`-subset of the set bits of `pool`.
fn for_each_subset(pool: VertexMask, k: usize, mut f: impl FnMut(VertexMask)) {
    let items = mask_members(pool);
    fn rec(items: &[usize], k: usize, acc: VertexMask, f: &mut impl FnMut(VertexMask)) {
        if k == 0 {
            f(acc);
            return;
        }
        for i in 0..items.len() {
            if items.len() - i < k {
                break;
            }
            rec(&items[i + 1..], k - 1, acc | 1 << items[i], f);
        }
    }
    rec(&items, k, 0, &mut f);
}

/// Symmetric transition graph on the candidate configurations (ascending
/// masks), as adjacency lists of indices.
fn transitions(
    g: &Graph,
    configs: &[VertexMask],
    closed: &[VertexMask],
    model: Model,
    k: usize,
    budget: &mut Budget,
) -> Result<Vec<Vec<u32>>, OracleError> {
    let index: HashMap<VertexMask, u32> = configs.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); configs.len()];
    match model {
        Model::OneGuard => {
            for (i, &d) in configs.iter().enumerate() {
                for x in mask_members(d) {
                    for &y in g.neighbors(x) {
                        if d >> y & 1 == 0 {
                            budget.charge(1)?;
                            if let Some(&j) = index.get(&(d & !(1 << x) | 1 << y)) {
                                adj[i].push(j);
                            }
                        }
                    }
                }
                adj[i].sort_unstable();
            }
        }
        Model::AllGuards => {
            for (i, &d) in configs.iter().enumerate() {
                let reach = closed_union(closed, d);
                let later = configs.len() - i - 1;
                let mut link = |j: usize, budget: &mut Budget| -> Result<(), OracleError> {
                    let e = configs[j];
                    if e & !reach == 0 && d & !closed_union(closed, e) == 0 {
                        budget.charge(1)?;
                        if guards_move_possible(closed, d, e) {
                            adj[i].push(j as u32);
                            adj[j].push(i as u32);
                        }
                    }
                    Ok(())
                };
                // Either scan the later configurations or enumerate the
                // k-subsets of N[D], whichever is smaller.
                if binomial_at_most(reach.count_ones() as usize, k, later) <= later {
                    let mut hits = Vec::new();
                    for_each_subset(reach, k, |e| {
                        if let Some(&j) = index.get(&e) {
                            if j as usize > i {
                                hits.push(j as usize);
                            }
                        }
                    });
                    hits.sort_unstable();
                    for j in hits {
                        link(j, budget)?;
                    }
                } else {
                    for j in i + 1..configs.len() {
                        link(j, budget)?;
                    }
                }
            }
            for a in &mut adj {
                a.sort_unstable();
            }
        }
    }
    Ok(adj)
}

/// Computes the greatest fixed point: starting from every dominating
/// `k`-set, repeatedly drop a configuration from which some attacked vertex
/// cannot be covered by a transition into a surviving configuration. Sweeps
/// run over configurations in ascending encoding order until nothing changes.
pub fn winning_set(g: &Graph, k: usize, model: Model, budget: &mut Budget) -> Result<WinningSet, OracleError> {
    let n = g.n();
    if k == 0 || k > n {
        return Err(OracleError::Precondition(format!("k must lie in 1..={n}, got {k}")));
    }
    let closed = g.closed_masks()?;
    let full = g.full_mask();
    let configs = dominating_k_sets(g, k, budget.remaining()).map_err(|_| budget.exhaust())?;
    budget.charge(configs.len() as u64)?;
    let adj = transitions(g, &configs, &closed, model, k, budget)?;
    let mut alive = vec![true; configs.len()];
    loop {
        let mut changed = false;
        for i in 0..configs.len() {
            if !alive[i] {
                continue;
            }
            let mut covered = configs[i];
            for &j in &adj[i] {
                if alive[j as usize] {
                    covered |= configs[j as usize];
                    if covered == full {
                        break;
                    }
                }
            }
            if covered != full {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let survivors = configs.iter().zip(&alive).filter(|(_, &a)| a).map(|(&m, _)| m).collect();
    Ok(WinningSet { k, model, configs: survivors, closed })
}

/// Least `k` with a nonempty winning set, summed over components; each
/// search starts from the domination number of the component.
pub(crate) fn least_guards(g: &Graph, model: Model, budget: &mut Budget) -> Result<usize, OracleError> {
    let mut total = 0;
    for comp in g.connected_components() {
        let (h, _) = g.induced_subgraph(&comp)?;
        total += least_guards_connected(&h, model, budget)?;
    }
    Ok(total)
}

fn least_guards_connected(h: &Graph, model: Model, budget: &mut Budget) -> Result<usize, OracleError> {
    let start = super::gamma_exact(h);
    for k in start..=h.n() {
        if !winning_set(h, k, model, budget)?.is_empty() {
            return Ok(k);
        }
    }
    unreachable!("guarding every vertex is always safe")
}
