use super::events::{EdgeStream, Op, StreamEvent};
use super::{assign_levels, LevelAssignment};
use crate::error::{Error, Result};
use crate::graph::{greedy_mis, Graph, VertexSet};
use crate::rng::Seed;

/// Everything the pass keeps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexStore {
    /// Other endpoints of the edges kept for each vertex.
    pub stored: Vec<Vec<usize>>,
    pub covered: Vec<bool>,
    /// Distinct edges kept at one or both endpoints.
    pub stored_edges: usize,
    pub events_seen: usize,
}

impl VertexStore {
    pub fn new(n: usize) -> Self {
        VertexStore {
            stored: vec![Vec::new(); n],
            covered: vec![false; n],
            stored_edges: 0,
            events_seen: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.stored.len()
    }

    /// Whether `(u, w)` should be kept at `u`.
    #[inline]
    fn wants(&self, levels: &LevelAssignment, u: usize, w: usize) -> bool {
        !self.covered[u] && levels.qualifies(u, w)
    }

    #[inline]
    fn keep(&mut self, levels: &LevelAssignment, u: usize, w: usize) {
        self.stored[u].push(w);
        if let Some(mu) = levels.budget_of(u) {
            if self.stored[u].len() >= mu {
                self.covered[u] = true;
            }
        }
    }

    /// Vertices at level `β` once uncovered lower vertices are lifted.
    pub fn lifted_top(&self, levels: &LevelAssignment) -> Vec<bool> {
        (0..self.n())
            .map(|u| levels.level(u) == levels.beta() || !self.covered[u])
            .collect()
    }
}

/// Single pass over an insertion-only stream.
///
/// An edge is dropped when both endpoints are already covered. Otherwise it
/// is kept at each uncovered endpoint whose level does not exceed the other
/// endpoint's, and the budget check runs immediately.
pub fn process_insertion_stream<I>(events: I, levels: &LevelAssignment) -> Result<VertexStore>
where
    I: IntoIterator<Item = StreamEvent>,
{
    let n = levels.n();
    let mut store = VertexStore::new(n);
    for e in events {
        store.events_seen += 1;
        if e.op == Op::Delete {
            return Err(Error::DeleteInInsertionOnly { u: e.u, v: e.v });
        }
        let (u, v) = (e.u, e.v);
        if u.max(v) >= n {
            return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
        }
        if store.covered[u] && store.covered[v] {
            continue;
        }
        let at_u = store.wants(levels, u, v);
        let at_v = store.wants(levels, v, u);
        if at_u {
            store.keep(levels, u, v);
        }
        if at_v {
            store.keep(levels, v, u);
        }
        if at_u || at_v {
            store.stored_edges += 1;
        }
    }
    Ok(store)
}

/// Lifts uncovered vertices to the top level and returns a greedy MIS (by
/// ascending id) of the stored edges among top-level vertices.
pub fn post_process(store: &VertexStore, levels: &LevelAssignment) -> VertexSet {
    let top = store.lifted_top(levels);
    let edges = store
        .stored
        .iter()
        .enumerate()
        .filter(|&(u, _)| top[u])
        .flat_map(|(u, ws)| ws.iter().filter(|&&w| top[w]).map(move |&w| (u, w)));
    let g = Graph::from_edges(store.n(), edges).expect("stored edges are simple");
    greedy_mis(&g, &top)
}

/// Levels from `seed`, one pass over `stream`, then post-processing.
pub fn stream_ruling_set(stream: &EdgeStream, beta: usize, seed: Seed) -> Result<(VertexSet, VertexStore)> {
    let levels = assign_levels(stream.n(), beta, seed)?;
    let store = process_insertion_stream(stream.events().iter().copied(), &levels)?;
    Ok((post_process(&store, &levels), store))
}
