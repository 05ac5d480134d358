//! Compute a 2-ruling set of a random graph on 8 machines and check it.

use symbreak::graph::gen_gnp;
use symbreak::ruling::beta_ruling_set_kmachine;
use symbreak::verify::is_beta_ruling_set;
use symbreak::Seed;

fn main() -> symbreak::Result<()> {
    let g = gen_gnp(1000, 0.02, Seed(1))?;
    let (set, metrics) = beta_ruling_set_kmachine(&g, 2, 8, Seed(2))?;
    let verdict = is_beta_ruling_set(&g, &set, 2)?;
    println!(
        "n={} m={} |S|={} rounds={} messages={} valid={}",
        g.n(),
        g.m(),
        set.len(),
        metrics.rounds,
        metrics.total_messages,
        verdict.ok
    );
    Ok(())
}
