//! Empirical behaviour of the L0 sampler on a support of ten ids.

use symbreak::l0::{L0Sampler, Sample};
use symbreak::Seed;

fn main() -> symbreak::Result<()> {
    let support: Vec<u64> = (0..10).map(|i| 6 * i + 1).collect();
    let trials = 10_000;
    let mut hits = vec![0usize; 64];
    let mut fails = 0;
    for t in 0..trials {
        let mut s = L0Sampler::new(64, 0.1, Seed(t))?;
        for x in 0..64 {
            s.update(x, 1);
        }
        for x in 0..64 {
            if !support.contains(&x) {
                s.update(x, -1);
            }
        }
        match s.query() {
            Sample::Item(x) => hits[x as usize] += 1,
            Sample::Fail => fails += 1,
            Sample::Empty => unreachable!("support is nonempty"),
        }
    }
    println!("fail rate {:.4}", fails as f64 / trials as f64);
    for &x in &support {
        println!("id {x:>2}: {:.4}", hits[x as usize] as f64 / trials as f64);
    }
    Ok(())
}
