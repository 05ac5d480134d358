use super::msg_efficient::{ruling_members, run_categories};
use crate::error::{Error, Result};
use crate::graph::{greedy_mis, Graph, VertexSet};
use crate::kmachine::{partition_vertices, Engine, EngineConfig, Message, Partition, RoundMetrics};
use crate::rng::{tag, Seed};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoPhaseConfig {
    pub k: usize,
    /// Fraction of machines (as an exponent of `k`) that run the sequential
    /// phase.
    pub eps: f64,
}

impl TwoPhaseConfig {
    pub fn new(k: usize, eps: f64) -> Result<Self> {
        if k < 2 {
            return Err(Error::TooFewMachines(k));
        }
        if !(0.0..=1.0).contains(&eps) {
            return Err(Error::InvalidEpsilon(eps));
        }
        Ok(TwoPhaseConfig { k, eps })
    }

    /// Uses [`optimal_epsilon`] for `n` vertices.
    pub fn for_graph(n: usize, k: usize) -> Result<Self> {
        Self::new(k, optimal_epsilon(n, k))
    }

    /// `ceil(k^eps)` sequential iterations.
    pub fn iterations(&self) -> usize {
        ((self.k as f64).powf(self.eps).ceil() as usize).clamp(1, self.k)
    }
}

/// The `eps` minimizing `n / k^(2-eps) + k^(1-eps)`, i.e.
/// `(3 - log n / log k) / 2`, clamped to `[0, 1]` and rounded to a multiple
/// of 0.05 (so `k = ceil(sqrt(n))` gives 0.5 despite the ceiling).
pub fn optimal_epsilon(n: usize, k: usize) -> f64 {
    if n < 2 || k < 2 {
        return 0.0;
    }
    let raw = 0.5 * (3.0 - (n as f64).ln() / (k as f64).ln());
    ((raw.clamp(0.0, 1.0) * 20.0).round() / 20.0).clamp(0.0, 1.0)
}

/// State after the sequential phase.
#[derive(Clone, Debug)]
pub struct PhaseOne {
    /// Union of the local MISs.
    pub joined: VertexSet,
    /// Vertices handed to the second phase.
    pub active: Vec<bool>,
    pub iterations: usize,
}

impl PhaseOne {
    pub fn residual_size(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }

    /// Largest degree in `g` among residual vertices.
    pub fn residual_max_degree(&self, g: &Graph) -> usize {
        (0..g.n()).filter(|&v| self.active[v]).map(|v| g.degree(v)).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct TwoPhaseReport {
    pub set: VertexSet,
    pub metrics: RoundMetrics,
    pub phase_one: PhaseOne,
    /// Rounds spent in the sequential phase.
    pub phase_one_rounds: u64,
    /// Node-level messages of the second phase.
    pub phase_two_msg: u64,
}

/// 2-ruling set: sequential local MISs on `ceil(k^eps)` machines, then the
/// message-efficient algorithm on the residue.
pub fn two_phase_two_ruling(g: &Graph, cfg: TwoPhaseConfig, seed: Seed) -> Result<(VertexSet, RoundMetrics)> {
    let r = two_phase_report(g, cfg, seed)?;
    Ok((r.set, r.metrics))
}

pub fn two_phase_report(g: &Graph, cfg: TwoPhaseConfig, seed: Seed) -> Result<TwoPhaseReport> {
    let cfg = TwoPhaseConfig::new(cfg.k, cfg.eps)?;
    let partition = partition_vertices(g, cfg.k, seed)?;
    let mut engine = Engine::new(EngineConfig::for_graph(g.n(), cfg.k)?);
    let first = phase_one(&mut engine, &partition, g, cfg.iterations())?;
    let phase_one_rounds = engine.metrics().rounds;

    let low = g.induced(&first.active);
    let run = run_categories(
        &mut engine,
        &partition,
        &low,
        &first.active,
        seed.child(tag::RULING_PHASE, &[2]),
    )?;
    let set = first.joined.union(&ruling_members(&run.categories));
    Ok(TwoPhaseReport {
        set,
        metrics: engine.metrics(),
        phase_one: first,
        phase_one_rounds,
        phase_two_msg: run.msg,
    })
}

/// Machines `0..iterations` take turns: each adds a greedy MIS of its still
/// active vertices, sends it to everyone in batches of `k - 1` ids (one id
/// per link, then every receiver relays its id to all other machines), and
/// all neighbors of the new members are deactivated. Finally, any active
/// vertex with a neighbor on one of those machines is deactivated too.
pub fn phase_one(engine: &mut Engine, partition: &Partition, g: &Graph, iterations: usize) -> Result<PhaseOne> {
    let n = g.n();
    let k = partition.k();
    let mut active = vec![true; n];
    let mut joined = Vec::new();

    for i in 0..iterations {
        let mut local = vec![false; n];
        for &v in partition.hosted(i) {
            local[v] = active[v];
        }
        let s = greedy_mis(g, &local);

        let known = disseminate(engine, i, k, s.as_slice())?;
        debug_assert_eq!(known, s.as_slice());

        for v in s.iter() {
            active[v] = false;
            for &w in g.neighbors(v) {
                active[w] = false;
            }
        }
        for &v in partition.hosted(i) {
            debug_assert!(!active[v]);
        }
        joined.extend(s.iter());
    }

    for v in 0..n {
        if active[v] && partition.host_view(v).iter().any(|&(_, m)| m < iterations) {
            active[v] = false;
        }
    }
    Ok(PhaseOne {
        joined: joined.into(),
        active,
        iterations,
    })
}

/// Broadcasts `ids` from machine `src`. Each batch of up to `k - 1` ids takes
/// two supersteps; an empty set still costs one round. Returns what a
/// receiver reassembled.
fn disseminate(engine: &mut Engine, src: usize, k: usize, ids: &[usize]) -> Result<Vec<usize>> {
    if ids.is_empty() {
        engine.idle();
        return Ok(Vec::new());
    }
    let others: Vec<usize> = (0..k).filter(|&m| m != src).collect();
    let mut seen = Vec::with_capacity(ids.len());
    for batch in ids.chunks(k - 1) {
        let mut out: Vec<Vec<Message>> = vec![Vec::new(); k];
        for (&id, &dst) in batch.iter().zip(&others) {
            out[src].push(Message::new(src, dst, vec![id as u64]));
        }
        let inboxes = engine.superstep(out)?;

        let mut relay: Vec<Vec<Message>> = vec![Vec::new(); k];
        for (m, inbox) in inboxes.iter().enumerate() {
            for msg in inbox {
                for &dst in &others {
                    if dst != m {
                        relay[m].push(Message::new(m, dst, msg.payload.clone()));
                    }
                }
            }
        }
        let relayed = engine.superstep(relay)?;

        // the first non-source machine sees its own id plus every relay
        let probe = others[0];
        seen.extend(inboxes[probe].iter().map(|m| m.payload[0] as usize));
        seen.extend(relayed[probe].iter().map(|m| m.payload[0] as usize));
    }
    seen.sort_unstable();
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_gnp;
    use crate::verify::{is_beta_ruling_set, is_independent_set, multi_source_distances};

    #[test]
    fn epsilon_for_square_root_machines() {
        for n in [100usize, 500, 2000, 10_000, 1_000_000] {
            let k = (n as f64).sqrt().ceil() as usize;
            assert_eq!(optimal_epsilon(n, k), 0.5, "n = {n}");
        }
        assert_eq!(optimal_epsilon(1_000_000, 10), 0.0);
        assert_eq!(optimal_epsilon(100, 100), 1.0);
    }

    #[test]
    fn config_validation() {
        assert!(matches!(TwoPhaseConfig::new(4, 1.5), Err(Error::InvalidEpsilon(_))));
        assert!(matches!(TwoPhaseConfig::new(1, 0.5), Err(Error::TooFewMachines(1))));
        assert_eq!(TwoPhaseConfig::new(64, 0.5).unwrap().iterations(), 8);
        assert_eq!(TwoPhaseConfig::new(64, 0.0).unwrap().iterations(), 1);
        assert_eq!(TwoPhaseConfig::new(64, 1.0).unwrap().iterations(), 64);
        assert_eq!(TwoPhaseConfig::new(10, 0.5).unwrap().iterations(), 4);
    }

    #[test]
    fn dissemination_batches() {
        let mut e = Engine::new(EngineConfig::new(4, 2).unwrap());
        let ids: Vec<usize> = (10..17).collect();
        let seen = disseminate(&mut e, 1, 4, &ids).unwrap();
        assert_eq!(seen, ids);
        // 7 ids in batches of 3: 3 batches, 2 supersteps each
        assert_eq!(e.metrics().rounds, 6);
        let mut idle = Engine::new(EngineConfig::new(4, 2).unwrap());
        assert!(disseminate(&mut idle, 0, 4, &[]).unwrap().is_empty());
        assert_eq!(idle.metrics().rounds, 1);
    }

    #[test]
    fn path_with_four_machines() {
        let p10 = Graph::from_edges(10, (0..9).map(|i| (i, i + 1))).unwrap();
        for seed in 0..20 {
            let cfg = TwoPhaseConfig::new(4, 0.5).unwrap();
            let (s, _) = two_phase_two_ruling(&p10, cfg, Seed(seed)).unwrap();
            assert!(is_beta_ruling_set(&p10, &s, 2).unwrap().ok, "seed {seed}");
        }
    }

    #[test]
    fn all_epsilons_valid() {
        for seed in 0..20 {
            let g = gen_gnp(200, 0.05, Seed(seed)).unwrap();
            for eps in [0.0, 0.5, 1.0] {
                let cfg = TwoPhaseConfig::new(8, eps).unwrap();
                let (s, _) = two_phase_two_ruling(&g, cfg, Seed(seed)).unwrap();
                assert!(is_beta_ruling_set(&g, &s, 2).unwrap().ok, "seed {seed} eps {eps}");
            }
        }
    }

    #[test]
    fn phase_one_structure() {
        for seed in 0..10 {
            let g = gen_gnp(300, 0.03, Seed(seed)).unwrap();
            let p = partition_vertices(&g, 9, Seed(seed)).unwrap();
            let mut e = Engine::new(EngineConfig::for_graph(300, 9).unwrap());
            let one = phase_one(&mut e, &p, &g, 3).unwrap();
            assert!(is_independent_set(&g, &one.joined).unwrap().ok);
            let dist = multi_source_distances(&g, &one.joined);
            for v in 0..g.n() {
                if !one.active[v] {
                    assert!(matches!(dist[v], Some(d) if d <= 2), "vertex {v}");
                } else {
                    assert!(g.neighbors(v).iter().all(|&w| !one.joined.contains(w)));
                    assert!(g.neighbors(v).iter().all(|&w| p.host(w) >= 3));
                }
            }
        }
    }
}
