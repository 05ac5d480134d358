//! Beeping MIS run directly and simulated on k machines: same decisions,
//! fewer rounds as k grows.

use symbreak::beeping::{decisions_to_set, run_beeping, simulate_in_kmachine, MisProgram, default_max_rounds};
use symbreak::graph::gen_gnp;
use symbreak::verify::is_mis;
use symbreak::Seed;

fn main() -> symbreak::Result<()> {
    let g = gen_gnp(1000, 0.04, Seed(7))?;
    let seed = Seed(11);
    let (direct, trace) = run_beeping(&MisProgram, &g, seed, default_max_rounds(g.n()))?;
    println!("beeping rounds T={} msg={}", trace.t(), trace.msg);
    for k in [5, 10, 20] {
        let run = simulate_in_kmachine(&MisProgram, &g, k, seed)?;
        assert_eq!(run.decisions, direct);
        println!("k={k:>2}: {} machine rounds, {} messages", run.metrics.rounds, run.metrics.total_messages);
    }
    let set = decisions_to_set(&direct);
    println!("MIS size {} valid={}", set.len(), is_mis(&g, &set)?.ok);
    Ok(())
}
