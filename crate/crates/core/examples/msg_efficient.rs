//! Node-level message counts of the message-efficient 2-ruling set against
//! n log n.

use symbreak::graph::gen_gnp;
use symbreak::ruling::msg_efficient_report;
use symbreak::verify::is_beta_ruling_set;
use symbreak::Seed;

fn main() -> symbreak::Result<()> {
    for n in [300, 1000, 3000] {
        let g = gen_gnp(n, 20.0 / n as f64, Seed(n as u64))?;
        let r = msg_efficient_report(&g, 8, Seed(1))?;
        let nlogn = n as f64 * (n as f64).log2();
        println!(
            "n={n:>4}: msg={:>6} msg/(n log n)={:.2} iterations={} valid={}",
            r.msg,
            r.msg as f64 / nlogn,
            r.iterations,
            is_beta_ruling_set(&g, &r.set, 2)?.ok
        );
    }
    Ok(())
}
