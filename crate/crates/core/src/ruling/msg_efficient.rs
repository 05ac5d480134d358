use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::kmachine::{ceil_log2, partition_vertices, Engine, EngineConfig, Message, Partition, RoundMetrics};
use crate::rng::{tag, Seed};

/// Node status. `Ruling`, `Adjacent` and `TwoHop` are categories 1, 2 and 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Undecided,
    /// In the ruling set.
    Ruling,
    /// Heard a ruling neighbor announce itself.
    Adjacent,
    /// Sampled an `Adjacent` neighbor, so within two hops of the set.
    TwoHop,
}

#[derive(Clone, Debug)]
pub struct MsgEfficientReport {
    pub set: VertexSet,
    pub categories: Vec<Category>,
    pub metrics: RoundMetrics,
    /// Node-to-node messages: `2s` per sampling, `d(v)` per broadcast and
    /// `d(v)` per announcement.
    pub msg: u64,
    pub iterations: u64,
}

/// Message-efficient 2-ruling set on `k` machines. Returns the set, engine
/// metrics and the node-level message count.
pub fn msg_efficient_two_ruling(g: &Graph, k: usize, seed: Seed) -> Result<(VertexSet, RoundMetrics, u64)> {
    let r = msg_efficient_report(g, k, seed)?;
    Ok((r.set, r.metrics, r.msg))
}

pub fn msg_efficient_report(g: &Graph, k: usize, seed: Seed) -> Result<MsgEfficientReport> {
    let partition = partition_vertices(g, k, seed)?;
    let mut engine = Engine::new(EngineConfig::for_graph(g.n(), k)?);
    let run = run_categories(&mut engine, &partition, g, &vec![true; g.n()], seed)?;
    Ok(MsgEfficientReport {
        set: ruling_members(&run.categories),
        categories: run.categories,
        metrics: engine.metrics(),
        msg: run.msg,
        iterations: run.iterations,
    })
}

pub(crate) fn ruling_members(categories: &[Category]) -> VertexSet {
    categories
        .iter()
        .enumerate()
        .filter_map(|(v, &c)| (c == Category::Ruling).then_some(v))
        .collect()
}

/// Size of the checking sample: `ceil(4 log2(d + 2))`.
pub(crate) fn sample_size(degree: usize) -> usize {
    (4.0 * ((degree + 2) as f64).log2()).ceil() as usize
}

fn iteration_cap(g: &Graph) -> u64 {
    64 * (g.max_degree() as u64 + 1) * ceil_log2(g.n() + 2) as u64
}

pub(crate) struct CategoryRun {
    pub categories: Vec<Category>,
    pub msg: u64,
    pub iterations: u64,
}

/// Runs the node program on the vertices with `active[v]`; `g` must already
/// be restricted to them. Inactive vertices stay `Undecided` and never act.
///
/// Per iteration, every undecided vertex:
///
/// 1. becomes `Adjacent` if a ruling neighbor announced itself last time;
/// 2. marks itself with probability `1 / (2 d(v))`;
/// 3. if marked, asks `ceil(4 log2(d + 2))` uniform neighbors (with
///    replacement) for their status and becomes `TwoHop` if one is `Adjacent`;
/// 4. otherwise sends `(d(v), v)` to all neighbors, stays marked only if no
///    marked neighbor has a larger `(degree, id)`, and then joins as
///    `Ruling` and announces it.
///
/// Across machines, a machine forwards only the largest `(degree, id)` it
/// hosts toward each destination vertex, and one announcement per
/// destination vertex.
pub(crate) fn run_categories(
    engine: &mut Engine,
    partition: &Partition,
    g: &Graph,
    active: &[bool],
    seed: Seed,
) -> Result<CategoryRun> {
    let n = g.n();
    let k = partition.k();
    let mut cat = vec![Category::Undecided; n];
    let mut announced_to = vec![false; n];
    let mut msg = 0u64;
    let mut open: Vec<usize> = (0..n).filter(|&v| active[v]).collect();
    for &v in &open {
        if g.degree(v) == 0 {
            cat[v] = Category::Ruling;
        }
    }
    open.retain(|&v| cat[v] == Category::Undecided);

    let cap = iteration_cap(g);
    let mut iter = 0u64;
    let mut best_heard: Vec<(usize, usize)> = vec![(0, 0); n];
    let mut stamp = vec![u64::MAX; n];

    loop {
        for &v in &open {
            if announced_to[v] {
                cat[v] = Category::Adjacent;
            }
        }
        open.retain(|&v| cat[v] == Category::Undecided);
        if open.is_empty() {
            break;
        }
        if iter == cap {
            return Err(Error::NonTermination {
                rounds: iter,
                undecided: open.len(),
            });
        }
        let rounds_before = engine.metrics().rounds;

        let candidates: Vec<usize> = open
            .iter()
            .copied()
            .filter(|&v| {
                let p = 1.0 / (2.0 * g.degree(v) as f64);
                seed.coin(tag::TWO_RULING_MARK, &[iter, v as u64], p)
            })
            .collect();

        // Checking sample: requests to remote hosts, replies carry the status.
        let mut saw_adjacent = vec![false; candidates.len()];
        let mut requests: Vec<Vec<Message>> = vec![Vec::new(); k];
        for (ci, &v) in candidates.iter().enumerate() {
            let nb = g.neighbors(v);
            let s = sample_size(nb.len());
            msg += 2 * s as u64;
            let home = partition.host(v);
            for j in 0..s {
                let w = nb[seed.below(tag::TWO_RULING_SAMPLE, &[iter, v as u64, j as u64], nb.len() as u64) as usize];
                let there = partition.host(w);
                if there == home {
                    saw_adjacent[ci] |= cat[w] == Category::Adjacent;
                } else {
                    requests[home].push(Message::new(home, there, vec![ci as u64, w as u64]));
                }
            }
        }
        if requests.iter().any(|r| !r.is_empty()) {
            let inboxes = engine.route(requests, seed.child(tag::ROUTE_CALL, &[iter, 0]))?;
            let mut replies: Vec<Vec<Message>> = vec![Vec::new(); k];
            for (m, inbox) in inboxes.into_iter().enumerate() {
                for req in inbox {
                    let w = req.payload[1] as usize;
                    let flag = (cat[w] == Category::Adjacent) as u64;
                    replies[m].push(Message::new(m, req.src, vec![req.payload[0], flag]));
                }
            }
            let back = engine.route(replies, seed.child(tag::ROUTE_CALL, &[iter, 1]))?;
            for reply in back.iter().flatten() {
                if reply.payload[1] == 1 {
                    saw_adjacent[reply.payload[0] as usize] = true;
                }
            }
        }

        let mut broadcasters = Vec::new();
        for (ci, &v) in candidates.iter().enumerate() {
            if saw_adjacent[ci] {
                cat[v] = Category::TwoHop;
            } else {
                broadcasters.push(v);
            }
        }

        // Local broadcast of (degree, id); each receiver keeps the maximum.
        let key = |v: usize| (g.degree(v), v);
        let mut sends: Vec<Vec<Message>> = vec![Vec::new(); k];
        let mut forwarded: Vec<std::collections::HashMap<usize, (usize, usize)>> = vec![Default::default(); k];
        for &v in &broadcasters {
            msg += g.degree(v) as u64;
            let home = partition.host(v);
            for &w in g.neighbors(v) {
                let there = partition.host(w);
                if there == home {
                    hear(&mut best_heard, &mut stamp, iter, w, key(v));
                } else {
                    let slot = forwarded[home].entry(w).or_insert(key(v));
                    if key(v) > *slot {
                        *slot = key(v);
                    }
                }
            }
        }
        for (home, best) in forwarded.into_iter().enumerate() {
            let mut best: Vec<_> = best.into_iter().collect();
            best.sort_unstable();
            for (w, (d, u)) in best {
                sends[home].push(Message::new(home, partition.host(w), vec![w as u64, d as u64, u as u64]));
            }
        }
        if sends.iter().any(|s| !s.is_empty()) {
            let inboxes = engine.route(sends, seed.child(tag::ROUTE_CALL, &[iter, 2]))?;
            for m in inboxes.iter().flatten() {
                let w = m.payload[0] as usize;
                hear(&mut best_heard, &mut stamp, iter, w, (m.payload[1] as usize, m.payload[2] as usize));
            }
        }

        let mut joiners = Vec::new();
        for &v in &broadcasters {
            let beaten = stamp[v] == iter && best_heard[v] > key(v);
            if !beaten {
                cat[v] = Category::Ruling;
                joiners.push(v);
            }
        }

        // Announcements, one per destination vertex per machine.
        let mut notes: Vec<Vec<Message>> = vec![Vec::new(); k];
        let mut noted = vec![usize::MAX; n];
        for &v in &joiners {
            msg += g.degree(v) as u64;
            let home = partition.host(v);
            for &w in g.neighbors(v) {
                let there = partition.host(w);
                if there == home {
                    announced_to[w] = true;
                } else if noted[w] != home {
                    noted[w] = home;
                    notes[home].push(Message::new(home, there, vec![w as u64]));
                }
            }
        }
        if notes.iter().any(|s| !s.is_empty()) {
            let inboxes = engine.route(notes, seed.child(tag::ROUTE_CALL, &[iter, 3]))?;
            for m in inboxes.iter().flatten() {
                announced_to[m.payload[0] as usize] = true;
            }
        }

        if engine.metrics().rounds == rounds_before {
            engine.idle();
        }
        open.retain(|&v| cat[v] == Category::Undecided);
        iter += 1;
    }

    Ok(CategoryRun {
        categories: cat,
        msg,
        iterations: iter,
    })
}

fn hear(best: &mut [(usize, usize)], stamp: &mut [u64], iter: u64, w: usize, key: (usize, usize)) {
    if stamp[w] != iter || key > best[w] {
        stamp[w] = iter;
        best[w] = key;
    }
}
