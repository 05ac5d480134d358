//! One pass over an insertion-only stream: stored edges shrink as β grows.

use symbreak::graph::gen_gnp;
use symbreak::streaming::{stream_ruling_set, EdgeStream};
use symbreak::verify::is_beta_ruling_set;
use symbreak::Seed;

fn main() -> symbreak::Result<()> {
    let g = gen_gnp(2000, 0.2, Seed(1))?;
    let stream = EdgeStream::insertions(&g, Seed(2));
    println!("{} insertions", stream.len());
    for beta in 1..=3 {
        let (set, store) = stream_ruling_set(&stream, beta, Seed(3))?;
        println!(
            "beta={beta}: stored {} edges ({:.1}% of m), |S|={} valid={}",
            store.stored_edges,
            100.0 * store.stored_edges as f64 / g.m() as f64,
            set.len(),
            is_beta_ruling_set(&g, &set, beta)?.ok
        );
    }
    Ok(())
}
