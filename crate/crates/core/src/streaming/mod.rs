//! One-pass ruling sets over edge streams.
//!
//! Before the stream starts every vertex draws a level in `1..=β`: all
//! vertices are at level 1, and a vertex at level `i - 1` is promoted to
//! level `i` with probability `n^(-q_(i-1))`, where `q_i = 2^-(β - i)`.
//! During the pass a vertex at level `i < β` keeps the first `μ_i` edges
//! toward vertices at its level or above and is *covered* once it has them;
//! level-`β` vertices keep every such edge. Afterwards uncovered vertices
//! are lifted to level `β` and a greedy MIS of the stored level-`β`
//! subgraph is the answer.
//!
//! [`process_insertion_stream`] stores edges directly;
//! [`process_dynamic_stream`] supports deletions by sketching each vertex's
//! incident edges with a bank of L0 samplers and decoding at the end.

mod dynamic;
mod events;
mod insertion;

pub use dynamic::{
    bank_size, dynamic_stream_ruling_set, edge_id, process_dynamic_stream, DynamicConfig, DynamicOutcome,
};
pub use events::{EdgeStream, Op, StreamEvent};
pub use insertion::{post_process, process_insertion_stream, stream_ruling_set, VertexStore};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rng::{tag, Seed};
use crate::verify::is_beta_ruling_set;

/// Multiplier `c` in `μ_i = ceil(c * n^(q_i) * ln n)`.
pub const DEFAULT_BUDGET_CONSTANT: f64 = 2.0;

#[derive(Clone, Debug, PartialEq)]
pub struct LevelAssignment {
    beta: usize,
    levels: Vec<usize>,
    /// `exponents[i - 1] = q_i`.
    exponents: Vec<f64>,
    /// `budgets[i - 1] = μ_i`; `None` means unbounded.
    budgets: Vec<Option<usize>>,
}

/// Levels with the default budget constant.
pub fn assign_levels(n: usize, beta: usize, seed: Seed) -> Result<LevelAssignment> {
    assign_levels_with(n, beta, seed, DEFAULT_BUDGET_CONSTANT)
}

pub fn assign_levels_with(n: usize, beta: usize, seed: Seed, budget_constant: f64) -> Result<LevelAssignment> {
    if beta < 1 {
        return Err(Error::InvalidBeta(beta));
    }
    if !(budget_constant > 0.0) {
        return Err(Error::Config(format!("budget constant must be positive, got {budget_constant}")));
    }
    let nf = n as f64;
    let exponents = exponents(beta);
    let levels = (0..n)
        .map(|u| {
            let mut level = 1;
            while level < beta {
                let p = nf.powf(-exponents[level - 1]);
                if !seed.coin(tag::LEVELS, &[u as u64, level as u64 + 1], p) {
                    break;
                }
                level += 1;
            }
            level
        })
        .collect();
    LevelAssignment::from_levels(levels, beta, budget_constant)
}

fn exponents(beta: usize) -> Vec<f64> {
    (1..=beta).map(|i| 0.5f64.powi((beta - i) as i32)).collect()
}

impl LevelAssignment {
    /// Explicit levels, each in `1..=beta`.
    pub fn from_levels(levels: Vec<usize>, beta: usize, budget_constant: f64) -> Result<Self> {
        if beta < 1 {
            return Err(Error::InvalidBeta(beta));
        }
        if !(budget_constant > 0.0) {
            return Err(Error::Config(format!("budget constant must be positive, got {budget_constant}")));
        }
        if let Some(bad) = levels.iter().find(|&&l| !(1..=beta).contains(&l)) {
            return Err(Error::Config(format!("level {bad} outside 1..={beta}")));
        }
        let nf = levels.len() as f64;
        let exponents = exponents(beta);
        let budgets = (1..=beta)
            .map(|i| {
                (i < beta).then(|| ((budget_constant * nf.powf(exponents[i - 1]) * nf.ln()).ceil() as usize).max(1))
            })
            .collect();
        Ok(LevelAssignment {
            beta,
            levels,
            exponents,
            budgets,
        })
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn n(&self) -> usize {
        self.levels.len()
    }

    #[inline]
    pub fn level(&self, u: usize) -> usize {
        self.levels[u]
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    /// `q_i` for `i` in `1..=β`.
    pub fn exponent(&self, i: usize) -> f64 {
        self.exponents[i - 1]
    }

    /// `μ_i`, `None` at level `β`.
    pub fn budget(&self, i: usize) -> Option<usize> {
        self.budgets[i - 1]
    }

    /// Budget of `u`'s level.
    pub fn budget_of(&self, u: usize) -> Option<usize> {
        self.budget(self.levels[u])
    }

    /// Number of vertices at level `i` or above.
    pub fn at_least(&self, i: usize) -> usize {
        self.levels.iter().filter(|&&l| l >= i).count()
    }

    /// Whether an edge `(u, w)` counts toward `u`'s active degree.
    #[inline]
    pub fn qualifies(&self, u: usize, w: usize) -> bool {
        self.levels[w] >= self.levels[u]
    }
}

/// Result line for a streaming run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StreamSummary {
    pub beta: usize,
    pub stored_edges: usize,
    pub sampler_count: usize,
    pub output_size: usize,
    pub valid: bool,
}

impl StreamSummary {
    /// `valid` is checked against `g`, the final graph of the stream.
    pub fn new(g: &Graph, set: &VertexSet, beta: usize, stored_edges: usize, sampler_count: usize) -> Result<Self> {
        Ok(StreamSummary {
            beta,
            stored_edges,
            sampler_count,
            output_size: set.len(),
            valid: is_beta_ruling_set(g, set, beta)?.ok,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::distribution::{Binomial, DiscreteCDF};

    #[test]
    fn exponents_double() {
        let l = assign_levels(50, 4, Seed(0)).unwrap();
        let q: Vec<f64> = (1..=4).map(|i| l.exponent(i)).collect();
        assert_eq!(q, vec![0.125, 0.25, 0.5, 1.0]);
        let l2 = assign_levels(50, 2, Seed(0)).unwrap();
        assert_eq!((l2.exponent(1), l2.exponent(2)), (0.5, 1.0));
    }

    #[test]
    fn budgets() {
        let l = assign_levels(100, 2, Seed(0)).unwrap();
        assert_eq!(l.budget(1), Some(93));
        assert_eq!(l.budget(2), None);
        let one = assign_levels(100, 1, Seed(0)).unwrap();
        assert!(one.levels().iter().all(|&x| x == 1));
        assert_eq!(one.budget(1), None);
        assert!(matches!(assign_levels(5, 0, Seed(0)), Err(Error::InvalidBeta(0))));
    }

    #[test]
    fn levels_are_nested_chains() {
        let l = assign_levels(1000, 3, Seed(8)).unwrap();
        assert!(l.levels().iter().all(|&x| (1..=3).contains(&x)));
        assert!(l.at_least(1) == 1000 && l.at_least(2) >= l.at_least(3));
    }

    #[test]
    fn top_level_size() {
        // |P_2| ~ Binomial(10^4, 10^-2); the window [40, 220] misses with
        // probability below 1e-10 per trial.
        let b = Binomial::new(0.01, 10_000).unwrap();
        let miss = b.cdf(39) + (1.0 - b.cdf(220));
        assert!(miss < 1e-10, "{miss}");
        for seed in 0..100 {
            let l = assign_levels(10_000, 2, Seed(seed)).unwrap();
            let top = l.at_least(2);
            assert!((40..=220).contains(&top), "seed {seed}: {top}");
        }
    }
}
