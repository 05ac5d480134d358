//! The k-machine model: random vertex partition with KT1 knowledge, a
//! synchronous superstep engine with a per-link bandwidth budget, and the
//! randomized two-hop routing scheme.

mod engine;
mod routing;

pub use engine::{Engine, EngineConfig, Message, RoundMetrics, DEFAULT_WORDS_PER_MESSAGE};
pub use routing::route;
pub(crate) use engine::ceil_log2;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{tag, Seed};

/// Vertex-to-machine assignment. A machine hosting `v` knows `v`'s neighbors
/// and the host of each neighbor (KT1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    k: usize,
    host: Vec<usize>,
    hosted: Vec<Vec<usize>>,
    host_view: Vec<Vec<(usize, usize)>>,
}

impl Partition {
    /// Builds the partition from an explicit host map.
    pub fn from_hosts(g: &Graph, k: usize, host: Vec<usize>) -> Result<Self> {
        if k < 2 {
            return Err(Error::TooFewMachines(k));
        }
        assert_eq!(host.len(), g.n());
        let mut hosted = vec![Vec::new(); k];
        for (v, &m) in host.iter().enumerate() {
            if m >= k {
                return Err(Error::MachineOutOfRange { machine: m, k });
            }
            hosted[m].push(v);
        }
        let host_view = (0..g.n())
            .map(|v| g.neighbors(v).iter().map(|&w| (w, host[w])).collect())
            .collect();
        Ok(Partition {
            k,
            host,
            hosted,
            host_view,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn host(&self, v: usize) -> usize {
        self.host[v]
    }

    pub fn hosts(&self) -> &[usize] {
        &self.host
    }

    pub fn hosted(&self, machine: usize) -> &[usize] {
        &self.hosted[machine]
    }

    /// Neighbors of `v` annotated with their host machine.
    pub fn host_view(&self, v: usize) -> &[(usize, usize)] {
        &self.host_view[v]
    }
}

/// Each vertex goes to an independent uniform machine.
pub fn partition_vertices(g: &Graph, k: usize, seed: Seed) -> Result<Partition> {
    if k < 2 {
        return Err(Error::TooFewMachines(k));
    }
    let host = (0..g.n())
        .map(|v| seed.below(tag::PARTITION, &[v as u64], k as u64) as usize)
        .collect();
    Partition::from_hosts(g, k, host)
}
