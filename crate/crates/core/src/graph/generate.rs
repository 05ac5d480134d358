use super::Graph;
use crate::error::{Error, Result};
use crate::rng::{tag, Seed};

/// Erdős–Rényi G(n, p). Each pair `{u, v}` flips its own keyed coin, so the
/// result does not depend on iteration order.
pub fn gen_gnp(n: usize, p: f64, seed: Seed) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let mut adjacency = vec![Vec::new(); n];
    if p > 0.0 {
        for u in 0..n {
            for v in (u + 1)..n {
                if seed.coin(tag::GNP, &[u as u64, v as u64], p) {
                    adjacency[u].push(v);
                    adjacency[v].push(u);
                }
            }
        }
    }
    Ok(Graph::from_raw_adjacency(adjacency))
}
