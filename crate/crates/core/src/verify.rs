//! Ground-truth oracles. These run on the full graph and share no code with
//! the algorithms they check beyond the `Graph` type.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const BRUTE_FORCE_MAX_N: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Both endpoints are in the set.
    Edge { u: usize, v: usize },
    /// Vertex farther than allowed from the set. `distance` is `None` when
    /// the set is unreachable from it.
    Distance {
        vertex: usize,
        distance: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub ok: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict {
            ok: true,
            witness: None,
        }
    }

    fn fail(w: Witness) -> Self {
        Verdict {
            ok: false,
            witness: Some(w),
        }
    }
}

pub fn is_independent_set(g: &Graph, s: &VertexSet) -> Result<Verdict> {
    let mask = s.to_mask(g.n())?;
    for u in s.iter() {
        if let Some(&v) = g.neighbors(u).iter().find(|&&v| mask[v]) {
            let (a, b) = (u.min(v), u.max(v));
            return Ok(Verdict::fail(Witness::Edge { u: a, v: b }));
        }
    }
    Ok(Verdict::pass())
}

/// Independent, and every vertex within `beta` hops of the set.
pub fn is_beta_ruling_set(g: &Graph, s: &VertexSet, beta: usize) -> Result<Verdict> {
    if beta < 1 {
        return Err(Error::InvalidBeta(beta));
    }
    let independent = is_independent_set(g, s)?;
    if !independent.ok {
        return Ok(independent);
    }
    let dist = multi_source_distances(g, s);
    let far = dist
        .iter()
        .enumerate()
        .find(|(_, d)| d.is_none_or(|d| d > beta));
    Ok(match far {
        Some((vertex, &distance)) => Verdict::fail(Witness::Distance { vertex, distance }),
        None => Verdict::pass(),
    })
}

pub fn is_mis(g: &Graph, s: &VertexSet) -> Result<Verdict> {
    is_beta_ruling_set(g, s, 1)
}

/// Hop distance from each vertex to the nearest member of `s`.
pub fn multi_source_distances(g: &Graph, s: &VertexSet) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    let mut queue = VecDeque::new();
    for v in s.iter() {
        dist[v] = Some(0);
        queue.push_back(v);
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap_or(0);
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Single-source BFS distance from `src` to `dst`.
pub fn bfs_distance(g: &Graph, src: usize, dst: usize) -> Option<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[src] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        if u == dst {
            return Some(dist[u]);
        }
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Every maximal independent set, by exhaustive enumeration over subsets.
/// Output order: ascending subset bitmask.
pub fn brute_force_all_mis(g: &Graph) -> Result<Vec<VertexSet>> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::GraphTooLarge {
            n,
            max: BRUTE_FORCE_MAX_N,
        });
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &w| acc | (1 << w)))
        .collect();
    let mut out = Vec::new();
    for subset in 0u32..(1u32 << n) {
        let independent = (0..n).all(|v| subset & (1 << v) == 0 || nbr[v] & subset == 0);
        if !independent {
            continue;
        }
        let maximal = (0..n).all(|v| subset & (1 << v) != 0 || nbr[v] & subset != 0);
        if maximal {
            out.push((0..n).filter(|&v| subset & (1 << v) != 0).collect());
        }
    }
    Ok(out)
}
