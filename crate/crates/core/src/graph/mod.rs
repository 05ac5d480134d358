//! Undirected simple graphs, vertex sets, generators and edge-list IO.

mod gadget;
mod generate;
pub(crate) mod io;

pub use gadget::{gen_gadget, gen_lower_bound_graph, valid_vectors, GadgetVector};
pub use generate::gen_gnp;
pub use io::{load_edge_list, parse_edge_list, save_edge_list, write_edge_list};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Immutable undirected simple graph on vertices `0..n`.
///
/// Adjacency lists are sorted and symmetric; the constructors reject
/// self-loops and silently merge duplicate edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    m: usize,
    max_degree: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            m: 0,
            max_degree: 0,
        }
    }

    /// Builds a graph from an edge iterator. Duplicates (in either orientation)
    /// are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { line: 0, vertex: u });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Self::from_raw_adjacency(adjacency))
    }

    /// Sorts and deduplicates each list. Callers guarantee symmetry and no
    /// self-loops.
    pub(crate) fn from_raw_adjacency(mut adjacency: Vec<Vec<usize>>) -> Self {
        let mut degree_sum = 0;
        let mut max_degree = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            list.shrink_to_fit();
            degree_sum += list.len();
            max_degree = max_degree.max(list.len());
        }
        let g = Graph {
            adjacency,
            m: degree_sum / 2,
            max_degree,
        };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Subgraph on the same vertex ids keeping only edges with both endpoints
    /// selected by `keep`. Unselected vertices become isolated.
    pub fn induced(&self, keep: &[bool]) -> Graph {
        assert_eq!(keep.len(), self.n());
        let adjacency = self
            .adjacency
            .iter()
            .enumerate()
            .map(|(u, list)| {
                if keep[u] {
                    list.iter().copied().filter(|&v| keep[v]).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        Self::from_raw_adjacency(adjacency)
    }

    /// Checks symmetry, simplicity and the cached `m` / `max_degree`.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let mut degree_sum = 0;
        let mut max_degree = 0;
        for (u, list) in self.adjacency.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("adjacency of {u} not strictly sorted"));
            }
            for &v in list {
                if v == u {
                    return Err(format!("self-loop at {u}"));
                }
                if v >= self.n() || self.adjacency[v].binary_search(&u).is_err() {
                    return Err(format!("edge ({u}, {v}) not symmetric"));
                }
            }
            degree_sum += list.len();
            max_degree = max_degree.max(list.len());
        }
        if degree_sum != 2 * self.m {
            return Err(format!("degree sum {degree_sum} != 2m = {}", 2 * self.m));
        }
        if max_degree != self.max_degree {
            return Err(format!("max degree {max_degree} != cached {}", self.max_degree));
        }
        Ok(())
    }
}

/// A set of vertex ids, kept sorted and deduplicated.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        VertexSet(
            mask.iter()
                .enumerate()
                .filter_map(|(v, &b)| b.then_some(v))
                .collect(),
        )
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Membership mask over `0..n`. Members `>= n` are an error.
    pub fn to_mask(&self, n: usize) -> Result<Vec<bool>> {
        let mut mask = vec![false; n];
        for v in self.iter() {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            mask[v] = true;
        }
        Ok(mask)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

/// Greedy MIS by ascending vertex id over the vertices selected by `active`,
/// using only edges of `g`.
pub fn greedy_mis(g: &Graph, active: &[bool]) -> VertexSet {
    let mut blocked = vec![false; g.n()];
    let mut out = Vec::new();
    for v in 0..g.n() {
        if !active[v] || blocked[v] {
            continue;
        }
        out.push(v);
        for &w in g.neighbors(v) {
            blocked[w] = true;
        }
    }
    VertexSet(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_merges_duplicates_and_rejects_loops() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.max_degree(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert!(matches!(
            Graph::from_edges(3, [(1, 1)]),
            Err(Error::SelfLoop { vertex: 1, .. })
        ));
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn induced_keeps_ids() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = g.induced(&[true, true, false, true]);
        assert_eq!(h.n(), 4);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert!(h.check_invariants().is_ok());
    }

    #[test]
    fn vertex_set_is_sorted_and_deduplicated() {
        let s: VertexSet = vec![5, 1, 5, 3].into();
        assert_eq!(s.as_slice(), &[1, 3, 5]);
        assert!(s.contains(3) && !s.contains(2));
        assert!(s.to_mask(4).is_err());
    }

    #[test]
    fn greedy_mis_on_path() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(greedy_mis(&g, &[true; 5]).as_slice(), &[0, 2, 4]);
        assert_eq!(
            greedy_mis(&g, &[false, true, true, true, true]).as_slice(),
            &[1, 3]
        );
    }
}
