use crate::beeping::{decisions_to_set, default_max_rounds, simulate_on, Decision, MisProgram};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::kmachine::{partition_vertices, Engine, EngineConfig, Message, Partition, RoundMetrics};
use crate::rng::{tag, Seed};

/// What one sampling iteration did.
#[derive(Clone, Debug, PartialEq)]
pub struct IterationStats {
    /// Iteration index, starting at 2.
    pub index: usize,
    /// Degree cutoff `Δ^(1 - (i-1)/β)`.
    pub threshold: f64,
    pub probability: f64,
    pub marked: usize,
    /// Unmarked vertices deactivated this iteration.
    pub deactivated: usize,
    /// Max degree of the graph induced by the marked vertices.
    pub marked_max_degree: usize,
    /// Max degree of the graph induced by the vertices still active afterwards.
    pub active_max_degree: usize,
    pub joined: usize,
}

#[derive(Clone, Debug)]
pub struct HierarchyReport {
    pub set: VertexSet,
    pub metrics: RoundMetrics,
    pub iterations: Vec<IterationStats>,
    /// Vertices left for the final MIS.
    pub residual: usize,
}

/// β-ruling set by hierarchical sampling on `k` machines.
pub fn beta_ruling_set_kmachine(g: &Graph, beta: usize, k: usize, seed: Seed) -> Result<(VertexSet, RoundMetrics)> {
    let r = beta_ruling_set_report(g, beta, k, seed)?;
    Ok((r.set, r.metrics))
}

/// Sampling probability for iteration `i`: `min(1, 4 ln n / threshold)`.
fn marking_probability(n: usize, threshold: f64) -> f64 {
    if threshold <= 0.0 {
        return 1.0;
    }
    (4.0 * (n as f64).ln() / threshold).clamp(0.0, 1.0)
}

/// As [`beta_ruling_set_kmachine`], with per-iteration statistics.
///
/// For `i = 2..=β`, with `t = Δ^(1 - (i-1)/β)` and `Δ` the max degree of `g`:
///
/// 1. every active vertex is marked with probability `min(1, 4 ln n / t)`;
/// 2. marked vertices notify every machine hosting one of their neighbors;
/// 3. an MIS of the marked subgraph is computed by the beeping simulation;
/// 4. unmarked active vertices with a marked neighbor, or with degree
///    above `t`, are deactivated; marked vertices leave as well.
///
/// A final MIS of what is still active completes the set.
pub fn beta_ruling_set_report(g: &Graph, beta: usize, k: usize, seed: Seed) -> Result<HierarchyReport> {
    if beta < 1 {
        return Err(Error::InvalidBeta(beta));
    }
    let partition = partition_vertices(g, k, seed)?;
    let mut engine = Engine::new(EngineConfig::for_graph(g.n(), k)?);
    let n = g.n();
    let delta = g.max_degree() as f64;
    let mut active = vec![true; n];
    let mut joined: Vec<usize> = Vec::new();
    let mut iterations = Vec::new();

    for i in 2..=beta {
        let threshold = delta.powf(1.0 - (i - 1) as f64 / beta as f64);
        let p = marking_probability(n, threshold);
        let marked: Vec<bool> = (0..n)
            .map(|v| active[v] && seed.coin(tag::RULING_MARK, &[i as u64, v as u64], p))
            .collect();

        let has_marked_neighbor = inform_neighbors(&mut engine, &partition, g, &marked, seed, i as u64)?;

        let sample = g.induced(&marked);
        let initial: Vec<Decision> = marked
            .iter()
            .map(|&m| if m { Decision::Undecided } else { Decision::Out })
            .collect();
        let (decisions, _) = simulate_on(
            &mut engine,
            &partition,
            &MisProgram,
            &sample,
            seed.child(tag::RULING_PHASE, &[i as u64]),
            default_max_rounds(n),
            Some(&initial),
            i as u64,
        )?;
        let mis = decisions_to_set(&decisions);

        let mut deactivated = 0;
        for v in 0..n {
            if !active[v] {
                continue;
            }
            if marked[v] {
                active[v] = false;
            } else if has_marked_neighbor[v] || g.degree(v) as f64 > threshold {
                active[v] = false;
                deactivated += 1;
            }
        }
        let active_max_degree = g.induced(&active).max_degree();
        debug_assert!(active_max_degree as f64 <= threshold);
        iterations.push(IterationStats {
            index: i,
            threshold,
            probability: p,
            marked: marked.iter().filter(|&&m| m).count(),
            deactivated,
            marked_max_degree: sample.max_degree(),
            active_max_degree,
            joined: mis.len(),
        });
        joined.extend(mis.iter());
    }

    let residual_graph = g.induced(&active);
    let initial: Vec<Decision> = active
        .iter()
        .map(|&a| if a { Decision::Undecided } else { Decision::Out })
        .collect();
    let (decisions, _) = simulate_on(
        &mut engine,
        &partition,
        &MisProgram,
        &residual_graph,
        seed.child(tag::RULING_PHASE, &[0]),
        default_max_rounds(n),
        Some(&initial),
        0,
    )?;
    joined.extend(decisions_to_set(&decisions).iter());

    Ok(HierarchyReport {
        set: joined.into(),
        metrics: engine.metrics(),
        iterations,
        residual: active.iter().filter(|&&a| a).count(),
    })
}

/// Every marked vertex tells each other machine hosting a neighbor of it
/// that it is marked (one message per machine: the receiver knows which of
/// its vertices are adjacent). Returns, per vertex, whether a neighbor is
/// marked.
fn inform_neighbors(
    engine: &mut Engine,
    partition: &Partition,
    g: &Graph,
    marked: &[bool],
    seed: Seed,
    context: u64,
) -> Result<Vec<bool>> {
    let k = partition.k();
    let mut flagged = vec![false; g.n()];
    let mut outboxes: Vec<Vec<Message>> = vec![Vec::new(); k];
    let mut reached = vec![usize::MAX; k];
    for u in (0..g.n()).filter(|&u| marked[u]) {
        let home = partition.host(u);
        for &(w, m) in partition.host_view(u) {
            if m == home {
                flagged[w] = true;
            } else if reached[m] != u {
                reached[m] = u;
                outboxes[home].push(Message::new(home, m, vec![u as u64]));
            }
        }
    }
    if outboxes.iter().all(Vec::is_empty) {
        engine.idle();
        return Ok(flagged);
    }
    let inboxes = engine.route(outboxes, seed.child(tag::ROUTE_CALL, &[u64::MAX, context]))?;
    for (m, inbox) in inboxes.iter().enumerate() {
        for msg in inbox {
            let u = msg.payload[0] as usize;
            for &(w, host) in partition.host_view(u) {
                if host == m {
                    flagged[w] = true;
                }
            }
        }
    }
    Ok(flagged)
}
