//! DIMACS-like and JSON graph readers and writers.
//!
//! DIMACS form: a `p edge <n> <m>` header, `e <u> <v>` lines (1-indexed) and
//! `c` comment lines. JSON form: `{"n": <int>, "edges": [[u, v], ...]}`,
//! 0-indexed. Writers emit a canonical order (edges ascending, `u < v`), so
//! write-read-write round-trips are byte-identical.

use crate::graph::{Graph, GraphError};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing 'p edge <n> <m>' header")]
    MissingHeader,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dimacs,
    Json,
}

impl std::str::FromStr for GraphFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "dimacs" => Ok(GraphFormat::Dimacs),
            "json" => Ok(GraphFormat::Json),
            other => Err(format!("unknown graph format {other:?}")),
        }
    }
}

pub fn parse_dimacs(text: &str) -> Result<Graph, FormatError> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = idx + 1;
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if graph.is_some() {
                return Err(FormatError::Parse {
                    line: lineno,
                    msg: "duplicate problem line".into(),
                });
            }
            let fields: Vec<&str> = rest.split_ascii_whitespace().collect();
            // "edge <n> <m>"
            if fields.len() != 3 || fields[0] != "edge" {
                return Err(FormatError::Parse {
                    line: lineno,
                    msg: format!("expected 'p edge <n> <m>', got {line:?}"),
                });
            }
            let n: usize = fields[1].parse().map_err(|_| FormatError::Parse {
                line: lineno,
                msg: format!("bad vertex count {:?}", fields[1]),
            })?;
            graph = Some(Graph::edgeless(n));
        } else if let Some(rest) = line.strip_prefix('e') {
            let g = graph.as_mut().ok_or(FormatError::MissingHeader)?;
            let fields: Vec<&str> = rest.split_ascii_whitespace().collect();
            if fields.len() != 2 {
                return Err(FormatError::Parse {
                    line: lineno,
                    msg: format!("expected 'e <u> <v>', got {line:?}"),
                });
            }
            let u: usize = fields[0].parse().map_err(|_| FormatError::Parse {
                line: lineno,
                msg: format!("bad endpoint {:?}", fields[0]),
            })?;
            let v: usize = fields[1].parse().map_err(|_| FormatError::Parse {
                line: lineno,
                msg: format!("bad endpoint {:?}", fields[1]),
            })?;
            if u == 0 || v == 0 {
                return Err(FormatError::Parse {
                    line: lineno,
                    msg: "DIMACS vertices are 1-indexed".into(),
                });
            }
            g.add_edge(u - 1, v - 1)?;
        } else {
            return Err(FormatError::Parse {
                line: lineno,
                msg: format!("unrecognized line {line:?}"),
            });
        }
    }
    graph.ok_or(FormatError::MissingHeader)
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

pub fn parse_json(text: &str) -> Result<Graph, FormatError> {
    let raw: GraphJson = serde_json::from_str(text)?;
    Ok(Graph::from_edge_list(raw.n, &raw.edges)?)
}

pub fn write_json(g: &Graph) -> String {
    let raw = GraphJson {
        n: g.n(),
        edges: g.edges().collect(),
    };
    serde_json::to_string(&raw).unwrap()
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, FormatError> {
    match format {
        GraphFormat::Dimacs => parse_dimacs(text),
        GraphFormat::Json => parse_json(text),
    }
}

pub fn write_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Dimacs => write_dimacs(g),
        GraphFormat::Json => write_json(g),
    }
}
