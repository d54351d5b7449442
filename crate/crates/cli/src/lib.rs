//! Command-line front end and local HTTP session API.

pub mod analysis;
pub mod commands;
pub mod presets;
pub mod service;

use std::path::Path;

use thiserror::Error;

use mguard::graph::parse_graph;
use mguard::Graph;

/// Failures that end a command; each maps to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or input files.
    #[error("{0}")]
    Input(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

/// Exit code for a negative verdict (infeasible, counterexample, failed
/// self-test).
pub const EXIT_NEGATIVE: u8 = 1;

/// Reads a graph in either text format, or the `graph` field of a document
/// written by `reduce`.
pub fn load_graph(path: &Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    graph_from_text(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn graph_from_text(text: &str) -> Result<Graph, String> {
    match parse_graph(text) {
        Ok(g) => Ok(g),
        Err(e) => {
            if let Ok(serde_json::Value::Object(doc)) = serde_json::from_str::<serde_json::Value>(text) {
                if let Some(inner) = doc.get("graph") {
                    return serde_json::from_value(inner.clone()).map_err(|e| e.to_string());
                }
            }
            Err(e.to_string())
        }
    }
}

pub fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
