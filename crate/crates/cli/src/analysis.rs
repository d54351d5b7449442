//! Parameter reports shared by `analyze` and `POST /api/analyze`.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use mguard::graph::{chordal_max_independent_set, split_partition};
use mguard::oracle::{alpha_exact, edn_oracle, gamma_exact, medn_oracle, Budget, OracleError};
use mguard::solvers::{
    choose_method, solve_k13_free, solve_k14_2split, solve_k14_3split, solve_split_auto, Method, SolverError,
};
use mguard::strategy::{strategy_k13, strategy_k14_2split, strategy_k14_3split, DefenseStrategy, StrategyError};
use mguard::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    Gamma,
    Alpha,
    Medn,
    Edn,
}

impl Param {
    pub fn as_str(self) -> &'static str {
        match self {
            Param::Gamma => "gamma",
            Param::Alpha => "alpha",
            Param::Medn => "medn",
            Param::Edn => "edn",
        }
    }
}

/// How `medn` is computed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum MethodChoice {
    #[default]
    #[serde(rename = "auto")]
    #[value(name = "auto")]
    Auto,
    #[serde(rename = "k13")]
    #[value(name = "k13")]
    K13,
    #[serde(rename = "k14-2")]
    #[value(name = "k14-2")]
    K14Two,
    #[serde(rename = "k14-3")]
    #[value(name = "k14-3")]
    K14Three,
    #[serde(rename = "oracle")]
    #[value(name = "oracle")]
    Oracle,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub n: usize,
    pub edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub medn: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edn: Option<usize>,
    pub methods: BTreeMap<String, String>,
    /// Wall time per parameter in milliseconds.
    pub timings: BTreeMap<String, f64>,
    pub budget_exceeded: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl AnalysisReport {
    pub fn any_budget_exceeded(&self) -> bool {
        self.budget_exceeded.values().any(|&b| b)
    }

    /// Plain-text form, one parameter per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("n = {}, edges = {}\n", self.n, self.edges);
        for (name, value) in [("gamma", self.gamma), ("alpha", self.alpha), ("medn", self.medn), ("edn", self.edn)] {
            let Some(method) = self.methods.get(name) else { continue };
            match value {
                Some(v) => out.push_str(&format!("{name} = {v} ({method})\n")),
                None => out.push_str(&format!("{name} = ? ({method}, budget exceeded)\n")),
            }
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Computes `params` with a fresh budget of `budget` units each. A
/// parameter that runs out of budget is reported as unknown rather than
/// failing the report.
pub fn analyze(
    g: &Graph,
    params: &[Param],
    method: MethodChoice,
    budget: u64,
    cross_check: bool,
) -> Result<AnalysisReport, AnalysisError> {
    let mut r = AnalysisReport { n: g.n(), edges: g.edge_count(), ..Default::default() };
    let mut params = params.to_vec();
    params.sort_unstable();
    params.dedup();
    for p in params {
        let start = Instant::now();
        let mut b = Budget::new(budget);
        let (value, tag) = match p {
            Param::Gamma => (Ok(gamma_exact(g)), "exact".to_string()),
            Param::Alpha => match chordal_max_independent_set(g) {
                Ok(s) => (Ok(s.len()), "chordal".to_string()),
                Err(_) => (Ok(alpha_exact(g)), "exact".to_string()),
            },
            Param::Medn => {
                let (v, tag) = medn(g, method, &mut b)?;
                (v, tag.to_string())
            }
            Param::Edn => (edn_oracle(g, &mut b).map(|e| e.value), "oracle".to_string()),
        };
        let value = match value {
            Ok(v) => Some(v),
            Err(OracleError::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        r.timings.insert(p.as_str().into(), start.elapsed().as_secs_f64() * 1e3);
        r.budget_exceeded.insert(p.as_str().into(), value.is_none());
        r.methods.insert(p.as_str().into(), tag.clone());
        match p {
            Param::Gamma => r.gamma = value,
            Param::Alpha => r.alpha = value,
            Param::Medn => r.medn = value,
            Param::Edn => r.edn = value,
        }
        if p == Param::Medn && cross_check && tag != "oracle" {
            if let (Some(v), Ok(o)) = (value, medn_oracle(g, &mut Budget::new(budget))) {
                if v != o {
                    r.warnings.push(format!("medn: {tag} gives {v}, oracle gives {o}"));
                }
            }
        }
    }
    sandwich_warnings(&mut r);
    Ok(r)
}

/// `γ <= γ_m^∞ <= α <= γ^∞` among the values present.
fn sandwich_warnings(r: &mut AnalysisReport) {
    let chain = [("gamma", r.gamma), ("medn", r.medn), ("alpha", r.alpha), ("edn", r.edn)];
    let known: Vec<(&str, usize)> = chain.iter().filter_map(|&(n, v)| v.map(|v| (n, v))).collect();
    for w in known.windows(2) {
        if w[0].1 > w[1].1 {
            r.warnings.push(format!("{} = {} exceeds {} = {}", w[0].0, w[0].1, w[1].0, w[1].1));
        }
    }
}

fn medn(g: &Graph, method: MethodChoice, b: &mut Budget) -> Result<(Result<usize, OracleError>, &'static str), AnalysisError> {
    let oracle = |b: &mut Budget| (medn_oracle(g, b), "oracle");
    let explicit = |want: Method| -> Result<usize, SolverError> {
        let p = split_partition(g).ok_or(SolverError::NotSplit)?;
        Ok(match want {
            Method::K13 => solve_k13_free(g, &p)?,
            Method::K14TwoSplit => solve_k14_2split(g, &p)?.0,
            _ => solve_k14_3split(g, &p)?.0,
        })
    };
    Ok(match method {
        MethodChoice::Oracle => oracle(b),
        MethodChoice::K13 => (Ok(explicit(Method::K13)?), "k13"),
        MethodChoice::K14Two => (Ok(explicit(Method::K14TwoSplit)?), "k14-2"),
        MethodChoice::K14Three => (Ok(explicit(Method::K14ThreeSplit)?), "k14-3"),
        MethodChoice::Auto => {
            if split_partition(g).is_none() || !g.is_connected() {
                oracle(b)
            } else {
                match solve_split_auto(g, b) {
                    Ok((v, m)) => (Ok(v), m.as_str()),
                    Err(SolverError::Oracle(e)) => (Err(e), "oracle-fallback"),
                    Err(e) => return Err(e.into()),
                }
            }
        }
    })
}

/// The constructive strategy for a split graph in one of the polynomial
/// classes.
pub fn split_strategy(g: &Graph) -> Result<DefenseStrategy, String> {
    let p = split_partition(g).ok_or("not a split graph")?;
    let s = match choose_method(g, &p).map_err(|e| e.to_string())? {
        Method::K13 => strategy_k13(g, &p),
        Method::K14TwoSplit => strategy_k14_2split(g, &p),
        Method::K14ThreeSplit => strategy_k14_3split(g, &p),
        other => return Err(format!("no constructive strategy for method {other}")),
    };
    s.map_err(|e: StrategyError| e.to_string())
}
