//! Plain-text multigraph format.
//!
//! ```text
//! # comment lines and blank lines are ignored
//! 3 3        vertex count, edge count
//! 0 1        one `tail head` pair per edge
//! 1 2
//! 2 0
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use ferroflow_core::Multigraph;

use crate::error::{CliError, CliResult};

/// Where a graph comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSource {
    Builtin(String),
    File(PathBuf),
}

impl GraphSource {
    pub fn load(&self) -> CliResult<Multigraph> {
        match self {
            GraphSource::Builtin(name) => Ok(Multigraph::builtin(name)?),
            GraphSource::File(path) => read_graph_file(path),
        }
    }

    /// Short label for report records.
    pub fn label(&self) -> String {
        match self {
            GraphSource::Builtin(name) => name.clone(),
            GraphSource::File(path) => path.display().to_string(),
        }
    }
}

pub fn read_graph_file(path: &Path) -> CliResult<Multigraph> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
    parse_graph(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn parse_graph(text: &str) -> CliResult<Multigraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = lines.next().ok_or_else(|| CliError::usage("empty graph file"))?;
    let [n, m] = pair(line, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        let [t, h] = pair(line, text)?;
        edges.push((t, h));
    }
    if edges.len() != m {
        return Err(CliError::usage(format!("header declares {m} edges, found {}", edges.len())));
    }
    Ok(Multigraph::new(n, edges)?)
}

fn pair(line: usize, text: &str) -> CliResult<[usize; 2]> {
    let bad = || CliError::usage(format!("line {line}: expected two non-negative integers, got `{text}`"));
    let mut it = text.split_whitespace().map(|t| t.parse::<usize>().map_err(|_| bad()));
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok([a?, b?]),
        _ => Err(bad()),
    }
}
