//! Edge streams and their text format.
//!
//! ```text
//! # n=3
//! + 0 1
//! + 1 2
//! - 0 1
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::io::parse_header;
use crate::graph::Graph;
use crate::rng::{tag, Seed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Insert,
    Delete,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StreamEvent {
    pub op: Op,
    pub u: usize,
    pub v: usize,
}

impl StreamEvent {
    pub fn insert(u: usize, v: usize) -> Self {
        StreamEvent { op: Op::Insert, u, v }
    }

    pub fn delete(u: usize, v: usize) -> Self {
        StreamEvent { op: Op::Delete, u, v }
    }

    /// Endpoints as `(min, max)`.
    pub fn key(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// A validated event sequence over `n` vertices: no self-loops, no delete of
/// an absent edge, no insert of a present one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeStream {
    n: usize,
    events: Vec<StreamEvent>,
}

impl EdgeStream {
    pub fn new(n: usize, events: Vec<StreamEvent>) -> Result<Self> {
        validate(n, events.iter().copied().enumerate().map(|(i, e)| (i + 1, e)))?;
        Ok(EdgeStream { n, events })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn events(&self) -> &[StreamEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn is_insertion_only(&self) -> bool {
        self.events.iter().all(|e| e.op == Op::Insert)
    }

    /// The graph left after all events.
    pub fn final_graph(&self) -> Graph {
        let mut present: HashSet<(usize, usize)> = HashSet::new();
        for e in &self.events {
            match e.op {
                Op::Insert => present.insert(e.key()),
                Op::Delete => present.remove(&e.key()),
            };
        }
        Graph::from_edges(self.n, present).expect("validated stream")
    }

    /// Every edge of `g` inserted once, in a seeded random order.
    pub fn insertions(g: &Graph, seed: Seed) -> Self {
        let mut edges: Vec<(usize, usize)> = g.edges().collect();
        edges.shuffle(&mut seed.rng(tag::STREAM_ORDER, &[0]));
        EdgeStream {
            n: g.n(),
            events: edges.into_iter().map(|(u, v)| StreamEvent::insert(u, v)).collect(),
        }
    }

    /// Inserts every edge of `g` in random order, then deletes a random
    /// `fraction` of them (rounded down), also in random order.
    pub fn insert_then_delete(g: &Graph, fraction: f64, seed: Seed) -> Result<Self> {
        if !(0.0..=1.0).contains(&fraction) {
            return Err(Error::InvalidProbability(fraction));
        }
        let mut s = Self::insertions(g, seed);
        let mut doomed: Vec<StreamEvent> = s.events.clone();
        doomed.shuffle(&mut seed.rng(tag::STREAM_DELETE, &[0]));
        doomed.truncate((fraction * g.m() as f64) as usize);
        s.events.extend(doomed.into_iter().map(|e| StreamEvent::delete(e.u, e.v)));
        Ok(s)
    }

    /// Text form with a `# n=` header.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 + self.events.len() * 12);
        let _ = writeln!(out, "# n={}", self.n);
        for e in &self.events {
            let sign = match e.op {
                Op::Insert => '+',
                Op::Delete => '-',
            };
            let _ = writeln!(out, "{sign} {} {}", e.u, e.v);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut declared = None;
        let mut events = Vec::new();
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
            let (Some(sign), Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
                return Err(malformed());
            };
            let op = match sign {
                "+" => Op::Insert,
                "-" => Op::Delete,
                _ => return Err(malformed()),
            };
            let u: usize = a.parse().map_err(|_| malformed())?;
            let v: usize = b.parse().map_err(|_| malformed())?;
            events.push((line_no, StreamEvent { op, u, v }));
        }
        let n = declared.unwrap_or_else(|| events.iter().map(|(_, e)| e.u.max(e.v) + 1).max().unwrap_or(0));
        validate(n, events.iter().copied())?;
        Ok(EdgeStream {
            n,
            events: events.into_iter().map(|(_, e)| e).collect(),
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }
}

fn validate(n: usize, events: impl Iterator<Item = (usize, StreamEvent)>) -> Result<()> {
    let mut present: HashSet<(usize, usize)> = HashSet::new();
    for (line, e) in events {
        if e.u == e.v {
            return Err(Error::SelfLoop { line, vertex: e.u });
        }
        if e.u.max(e.v) >= n {
            return Err(Error::VertexOutOfRange {
                vertex: e.u.max(e.v),
                n,
            });
        }
        match e.op {
            Op::Insert if !present.insert(e.key()) => {
                return Err(Error::DuplicateInsert { line, u: e.u, v: e.v });
            }
            Op::Delete if !present.remove(&e.key()) => {
                return Err(Error::DeleteAbsent { line, u: e.u, v: e.v });
            }
            _ => {}
        }
    }
    Ok(())
}
