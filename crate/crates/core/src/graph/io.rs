//! Edge-list text format.
//!
//! ```text
//! # n=4
//! 0 1
//! 1 2
//! ```
//!
//! The `# n=<N>` header is optional; without it `n` is one past the largest
//! id. Other `#` lines are comments. Edges are symmetrized and deduplicated on
//! load, self-loops are rejected.

use std::fmt::Write as _;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

pub(crate) fn parse_header(line: &str) -> Option<usize> {
    let rest = line.strip_prefix('#')?.trim();
    rest.strip_prefix("n=")?.trim().parse().ok()
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if declared.is_none() {
                declared = parse_header(line);
            }
            continue;
        }
        let malformed = || Error::Malformed {
            line: line_no,
            content: raw.to_string(),
        };
        let mut parts = line.split_whitespace();
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(malformed());
        };
        let u: usize = a.parse().map_err(|_| malformed())?;
        let v: usize = b.parse().map_err(|_| malformed())?;
        if u == v {
            return Err(Error::SelfLoop {
                line: line_no,
                vertex: u,
            });
        }
        if let Some(n) = declared {
            if u.max(v) >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
        }
        edges.push((u, v));
    }
    let n = declared.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Graph::from_edges(n, edges)
}

/// Canonical text: header, then edges `u < v` in lexicographic order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + g.m() * 10);
    let _ = writeln!(out, "# n={}", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text)
}

pub fn save_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, write_edge_list(g)).map_err(|e| Error::io(path, e))
}
