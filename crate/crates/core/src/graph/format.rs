//! Text formats.
//!
//! JSON: `{"n": 3, "edges": [[0,1],[1,2]], "labels": {"0": "a"}}` with
//! `labels` optional. Edges are written with `u < v`, sorted.
//!
//! Edge list: one `u v` pair per line, `#` starts a comment, and an optional
//! first line `n=<int>`; without it `n` is one more than the largest id.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, String>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        let mut g = Graph::from_edges(j.n, j.edges.iter().map(|e| (e[0], e[1])))?;
        for (k, name) in j.labels {
            let id: usize = k
                .parse()
                .map_err(|_| GraphError::Syntax(format!("label key {k:?} is not a vertex id")))?;
            if id >= g.n() {
                return Err(GraphError::VertexOutOfRange { id, n: g.n() });
            }
            g.set_label(id, name);
        }
        Ok(g)
    }
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            labels: g.labels().iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        }
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        Graph::try_from(j).map_err(serde::de::Error::custom)
    }
}

/// Parses either format; text whose first non-blank character is `{` is JSON.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    if text.trim_start().starts_with('{') {
        let j: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::Syntax(e.to_string()))?;
        Graph::try_from(j)
    } else {
        parse_edge_list(text)
    }
}

fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut declared_n = None;
    let mut edges = Vec::new();
    let mut seen_content = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("n=") {
            if seen_content {
                return Err(GraphError::Syntax(format!(
                    "line {}: header n=<int> must come first",
                    lineno + 1
                )));
            }
            let n = rest
                .trim()
                .parse::<usize>()
                .map_err(|_| GraphError::Syntax(format!("line {}: bad header", lineno + 1)))?;
            declared_n = Some(n);
            seen_content = true;
            continue;
        }
        seen_content = true;
        let mut parts = line.split_whitespace();
        let mut next_id = || -> Result<usize, GraphError> {
            parts
                .next()
                .ok_or_else(|| GraphError::Syntax(format!("line {}: expected `u v`", lineno + 1)))?
                .parse::<usize>()
                .map_err(|_| GraphError::Syntax(format!("line {}: bad vertex id", lineno + 1)))
        };
        let u = next_id()?;
        let v = next_id()?;
        if parts.next().is_some() {
            return Err(GraphError::Syntax(format!("line {}: trailing tokens", lineno + 1)));
        }
        edges.push((u, v));
    }
    let n = match declared_n {
        Some(n) => n,
        None => edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0),
    };
    Graph::from_edges(n, edges)
}

impl Graph {
    /// Canonical JSON encoding (compact).
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph json")
    }

    /// Edge list with an explicit `n=` header.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n={}\n", self.n());
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}
