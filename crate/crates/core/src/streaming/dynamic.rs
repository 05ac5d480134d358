use super::events::{EdgeStream, Op, StreamEvent};
use super::insertion::{post_process, VertexStore};
use super::{assign_levels, LevelAssignment};
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::l0::{pow_mod, SamplerBank};
use crate::rng::{tag, Seed};

/// Sizing of the per-vertex sampler banks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DynamicConfig {
    /// Failure probability of each sampler in a bank.
    pub delta: f64,
    /// Promised bound on any vertex's degree in the final graph; `None`
    /// means `n - 1`.
    pub degree_bound: Option<usize>,
}

impl Default for DynamicConfig {
    fn default() -> Self {
        DynamicConfig {
            delta: 0.5,
            degree_bound: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DynamicOutcome {
    pub set: VertexSet,
    /// Decoded edges per vertex and the covered flags rebuilt from them.
    pub store: VertexStore,
    /// Distinct decoded edges kept.
    pub stored_edges: usize,
    /// Member samplers over all banks.
    pub sampler_count: usize,
}

/// Id of the edge `{u, v}` in `[0, n^2)`.
#[inline]
pub fn edge_id(u: usize, v: usize, n: usize) -> u64 {
    let (a, b) = (u.min(v), u.max(v));
    (a * n + b) as u64
}

fn other_end(id: u64, u: usize, n: usize) -> usize {
    let (a, b) = ((id / n as u64) as usize, (id % n as u64) as usize);
    if a == u {
        b
    } else {
        a
    }
}

/// Samplers for a vertex at `level` with `peers` other vertices at that
/// level or above: `ceil(4 x ln n)` where `x` is the number of edges the
/// vertex must be able to decode. Below the top level that is
/// `min(μ, degree_bound, peers)`; at the top it is `min(degree_bound, peers)`.
pub fn bank_size(levels: &LevelAssignment, level: usize, peers: usize, degree_bound: usize) -> usize {
    let ln_n = (levels.n() as f64).ln();
    let need = match levels.budget(level) {
        Some(mu) => mu.min(degree_bound).min(peers),
        None => degree_bound.min(peers).max(1),
    };
    ((4.0 * need as f64 * ln_n).ceil() as usize).max(1)
}

/// One pass over an insertion-deletion stream.
///
/// Each vertex sketches its incident edges toward vertices at its level or
/// above. At the end every bank is decoded; a vertex below the top level
/// keeps up to `μ` of its edges (ascending by id) and is covered iff it got
/// `μ`. A bank that decodes fewer than `min(μ, degree)` distinct edges (all
/// of them at the top level) is an error.
pub fn process_dynamic_stream<I>(
    events: I,
    levels: &LevelAssignment,
    config: &DynamicConfig,
    seed: Seed,
) -> Result<DynamicOutcome>
where
    I: IntoIterator<Item = StreamEvent>,
{
    let n = levels.n();
    let beta = levels.beta();
    let bound = config.degree_bound.unwrap_or(n.saturating_sub(1));
    let universe = (n as u64 * n as u64).max(1);
    let at_least: Vec<usize> = (0..=beta + 1).map(|i| if i == 0 { n } else { levels.at_least(i) }).collect();
    let bank_seed = seed.child(tag::SAMPLER, &[0]);

    let mut banks = (0..n)
        .map(|u| {
            let l = levels.level(u);
            let size = bank_size(levels, l, at_least[l].saturating_sub(1), bound);
            SamplerBank::new(universe, size, config.delta, bank_seed, u as u64)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut store = VertexStore::new(n);
    for e in events {
        store.events_seen += 1;
        let (u, v) = (e.u, e.v);
        if u.max(v) >= n {
            return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
        }
        if u == v {
            return Err(Error::SelfLoop {
                line: store.events_seen,
                vertex: u,
            });
        }
        let delta = match e.op {
            Op::Insert => 1,
            Op::Delete => -1,
        };
        let id = edge_id(u, v, n);
        for (a, b) in [(u, v), (v, u)] {
            if levels.qualifies(a, b) {
                let bank = &mut banks[a];
                let power = pow_mod(bank.base(), id);
                bank.update_with_power(id, delta, power);
            }
        }
    }

    let mut kept_ids = Vec::new();
    let mut sampler_count = 0;
    for (u, bank) in banks.iter().enumerate() {
        sampler_count += bank.len();
        let degree = bank.total_count();
        if degree < 0 {
            return Err(Error::Config(format!("vertex {u} has more deletions than insertions")));
        }
        let degree = degree as usize;
        let budget = levels.budget_of(u);
        let required = budget.map_or(degree, |mu| mu.min(degree));
        let recovered = bank.recovered();
        if recovered.len() < required {
            return Err(Error::SamplerBankFailure {
                vertex: u,
                recovered: recovered.len(),
                required,
            });
        }
        let take = budget.unwrap_or(usize::MAX).min(recovered.len());
        store.stored[u] = recovered[..take].iter().map(|&id| other_end(id, u, n)).collect();
        store.covered[u] = budget == Some(take);
        kept_ids.extend_from_slice(&recovered[..take]);
    }
    kept_ids.sort_unstable();
    kept_ids.dedup();
    store.stored_edges = kept_ids.len();

    Ok(DynamicOutcome {
        set: post_process(&store, levels),
        stored_edges: store.stored_edges,
        sampler_count,
        store,
    })
}

/// Levels from `seed`, one pass over `stream`, then decoding and
/// post-processing.
pub fn dynamic_stream_ruling_set(
    stream: &EdgeStream,
    beta: usize,
    config: &DynamicConfig,
    seed: Seed,
) -> Result<DynamicOutcome> {
    let levels = assign_levels(stream.n(), beta, seed)?;
    process_dynamic_stream(stream.events().iter().copied(), &levels, config, seed)
}
