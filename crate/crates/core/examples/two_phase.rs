//! Two-phase 2-ruling set across exponents, with the residual left by the
//! sequential phase.

use symbreak::graph::gen_gnp;
use symbreak::ruling::{optimal_epsilon, two_phase_report, TwoPhaseConfig};
use symbreak::verify::is_beta_ruling_set;
use symbreak::Seed;

fn main() -> symbreak::Result<()> {
    let g = gen_gnp(2000, 0.02, Seed(1))?;
    let k = 45;
    println!("suggested eps for n={} k={k}: {}", g.n(), optimal_epsilon(g.n(), k));
    for eps in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let r = two_phase_report(&g, TwoPhaseConfig::new(k, eps)?, Seed(2))?;
        println!(
            "eps={eps:.2}: rounds={:>5} (phase one {:>4}) residual={:>4} residual max degree={:>3} |S|={} valid={}",
            r.metrics.rounds,
            r.phase_one_rounds,
            r.phase_one.residual_size(),
            r.phase_one.residual_max_degree(&g),
            r.set.len(),
            is_beta_ruling_set(&g, &r.set, 2)?.ok
        );
    }
    Ok(())
}
