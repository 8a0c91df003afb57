//! JSON envelopes. Every document carries `"schema": 1` at the top level.

use defcol_core::Graph;
use serde::{Deserialize, Serialize};

use crate::graph6;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInfo {
    pub graph6: String,
    pub n: usize,
    pub edges: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
}

impl GraphInfo {
    pub fn of(g: &Graph) -> Self {
        GraphInfo { graph6: graph6::emit(g), n: g.n(), edges: g.edge_count(), name: g.name().map(String::from) }
    }
}

#[derive(Debug, Serialize)]
pub struct Report<'a, T: Serialize> {
    pub schema: u32,
    pub command: &'a str,
    #[serde(flatten)]
    pub body: T,
}

pub fn render<T: Serialize>(command: &str, body: T) -> serde_json::Result<String> {
    let mut s = serde_json::to_string_pretty(&Report { schema: SCHEMA, command, body })?;
    s.push('\n');
    Ok(s)
}
