use super::{default_max_rounds, drive, BeepProgram, BeepTrace, Decision};
use crate::error::Result;
use crate::graph::Graph;
use crate::kmachine::{partition_vertices, Engine, EngineConfig, Message, Partition, RoundMetrics};
use crate::rng::{tag, Seed};

#[derive(Clone, Debug)]
pub struct KMachineRun {
    pub decisions: Vec<Decision>,
    pub trace: BeepTrace,
    pub metrics: RoundMetrics,
}

/// Inter-machine beep notifications for one round.
///
/// Machine `M` sends `(M -> M', [w])` once for each vertex `w` hosted on
/// `M' != M` with at least one beeping neighbor on `M`, however many of
/// `M`'s beepers are adjacent to `w`.
pub fn beep_notifications(partition: &Partition, g: &Graph, beepers: &[usize]) -> Vec<Vec<Message>> {
    let k = partition.k();
    let mut outboxes: Vec<Vec<Message>> = vec![Vec::new(); k];
    let mut by_machine: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &u in beepers {
        by_machine[partition.host(u)].push(u);
    }
    // stamp[w] == m + 1 once machine m has queued a notification for w
    let mut stamp = vec![0usize; g.n()];
    for (m, hosted_beepers) in by_machine.iter().enumerate() {
        for &u in hosted_beepers {
            for &w in g.neighbors(u) {
                let dst = partition.host(w);
                if dst != m && stamp[w] != m + 1 {
                    stamp[w] = m + 1;
                    outboxes[m].push(Message::new(m, dst, vec![w as u64]));
                }
            }
        }
    }
    outboxes
}

/// Runs `prog` on an existing engine and partition. Every simulated round
/// routes its notifications and costs at least one engine round (the
/// barrier). `context` separates the routing randomness of different calls
/// that share a seed.
pub fn simulate_on<P: BeepProgram>(
    engine: &mut Engine,
    partition: &Partition,
    prog: &P,
    g: &Graph,
    seed: Seed,
    max_rounds: u64,
    initial: Option<&[Decision]>,
    context: u64,
) -> Result<(Vec<Decision>, BeepTrace)> {
    drive(prog, g, seed, max_rounds, initial, |round, beepers, _| {
        let mut heard = vec![false; g.n()];
        // receivers OR local beeps with incoming notifications
        for &u in beepers {
            let m = partition.host(u);
            for &w in g.neighbors(u) {
                if partition.host(w) == m {
                    heard[w] = true;
                }
            }
        }
        let outboxes = beep_notifications(partition, g, beepers);
        if outboxes.iter().all(Vec::is_empty) {
            engine.idle();
            return Ok(heard);
        }
        let inboxes = engine.route(outboxes, seed.child(tag::ROUTE_CALL, &[context, round]))?;
        for msg in inboxes.iter().flatten() {
            heard[msg.payload[0] as usize] = true;
        }
        Ok(heard)
    })
}

/// Simulates `prog` on `k` machines with the default link budget.
pub fn simulate_in_kmachine<P: BeepProgram>(prog: &P, g: &Graph, k: usize, seed: Seed) -> Result<KMachineRun> {
    let partition = partition_vertices(g, k, seed)?;
    let mut engine = Engine::new(EngineConfig::for_graph(g.n(), k)?);
    let (decisions, trace) = simulate_on(
        &mut engine,
        &partition,
        prog,
        g,
        seed,
        default_max_rounds(g.n()),
        None,
        0,
    )?;
    Ok(KMachineRun {
        decisions,
        trace,
        metrics: engine.metrics(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beeping::{run_beeping, MisProgram};
    use crate::graph::gen_gnp;
    use crate::kmachine::Partition;

    #[test]
    fn matches_direct_run() {
        for seed in 0..10 {
            let g = gen_gnp(80, 0.08, Seed(seed)).unwrap();
            let direct = run_beeping(&MisProgram, &g, Seed(seed), 1000).unwrap();
            let sim = simulate_in_kmachine(&MisProgram, &g, 4, Seed(seed)).unwrap();
            assert_eq!(sim.decisions, direct.0);
            assert_eq!(sim.trace, direct.1);
            assert!(sim.metrics.rounds >= sim.trace.t());
        }
    }

    #[test]
    fn co_hosted_beepers_share_one_notification() {
        // u1 = 0, u2 = 1 on machine 0, both adjacent to v = 2 on machine 1.
        let g = Graph::from_edges(3, [(0, 2), (1, 2)]).unwrap();
        let p = Partition::from_hosts(&g, 2, vec![0, 0, 1]).unwrap();
        let out = beep_notifications(&p, &g, &[0, 1]);
        assert_eq!(out[0], vec![Message::new(0, 1, vec![2])]);
        assert!(out[1].is_empty());
    }

    #[test]
    fn one_notification_per_reached_vertex() {
        let g = gen_gnp(120, 0.1, Seed(8)).unwrap();
        let p = partition_vertices(&g, 5, Seed(9)).unwrap();
        let beepers: Vec<usize> = (0..120).filter(|v| v % 3 == 0).collect();
        let out = beep_notifications(&p, &g, &beepers);
        for m in 0..5 {
            for m2 in (0..5).filter(|&x| x != m) {
                let expected = (0..g.n())
                    .filter(|&v| p.host(v) == m2)
                    .filter(|&v| g.neighbors(v).iter().any(|&u| p.host(u) == m && beepers.contains(&u)))
                    .count();
                let got = out[m].iter().filter(|msg| msg.dst == m2).count();
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn rejects_single_machine() {
        assert!(simulate_in_kmachine(&MisProgram, &Graph::empty(3), 1, Seed(0)).is_err());
    }
}
