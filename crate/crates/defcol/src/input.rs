//! Resolving the graph a command runs on.

use std::path::Path;

use defcol_core::families::named_graph;
use defcol_core::Graph;

use crate::error::CliError;
use crate::{edgelist, graph6};

pub fn read_file(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| CliError::io("stdin", e))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))
}

/// `NAME` or `NAME,P1,P2,...`, e.g. `petersen`, `cycle,7`, `complete_bipartite,2,3`.
pub fn named(spec: &str) -> Result<Graph, CliError> {
    let mut parts = spec.split(',').map(str::trim);
    let name = parts.next().filter(|s| !s.is_empty()).ok_or_else(|| CliError::usage("empty graph name"))?;
    let params = parts
        .map(|p| p.parse::<usize>().map_err(|_| CliError::usage(format!("`{p}` is not a non-negative integer parameter"))))
        .collect::<Result<Vec<_>, _>>()?;
    let g = named_graph(name, &params)?;
    Ok(if g.name().is_some() { g } else { g.with_name(spec) })
}

pub fn from_graph6(text: &str) -> Result<Graph, CliError> {
    Ok(graph6::parse(text)?)
}

pub fn from_edgelist(path: &Path) -> Result<Graph, CliError> {
    Ok(edgelist::parse(&read_file(path)?)?)
}

/// Graphs from a file holding one graph6 string per line.
pub fn graph6_file(path: &Path) -> Result<Vec<Graph>, CliError> {
    graph6::parse_lines(&read_file(path)?)
        .map_err(|(line, e)| CliError::usage(format!("{}: line {line}: {e}", path.display())))
}

/// Non-negative integers given as `3`, `1-4` or `0,2,5`.
pub fn int_range(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::usage(format!("`{text}` is not an integer, range `a-b` or list `a,b,c`"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let out: Vec<usize> = if let Some((a, b)) = text.split_once('-') {
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(bad());
        }
        (a..=b).collect()
    } else {
        text.split(',').map(num).collect::<Result<_, _>>()?
    };
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}
