//! Hierarchical sampling for β = 1, 2, 3 with per-iteration statistics.

use symbreak::graph::gen_gnp;
use symbreak::ruling::beta_ruling_set_report;
use symbreak::verify::is_beta_ruling_set;
use symbreak::Seed;

fn main() -> symbreak::Result<()> {
    let g = gen_gnp(2000, 0.02, Seed(5))?;
    println!("n={} m={} max degree={}", g.n(), g.m(), g.max_degree());
    for beta in 1..=3 {
        let r = beta_ruling_set_report(&g, beta, 16, Seed(6))?;
        println!(
            "beta={beta}: |S|={} rounds={} valid={}",
            r.set.len(),
            r.metrics.rounds,
            is_beta_ruling_set(&g, &r.set, beta)?.ok
        );
        for it in &r.iterations {
            println!(
                "  iteration {}: threshold {:.1}, marked {}, active max degree {}",
                it.index, it.threshold, it.marked, it.active_max_degree
            );
        }
    }
    Ok(())
}
