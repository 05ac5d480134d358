//! Ruling sets on the k-machine engine.
//!
//! * [`beta_ruling_set_kmachine`]: hierarchical sampling. Each iteration
//!   samples low-degree active vertices, computes an MIS of the sample with
//!   the beeping simulation and deactivates everything near it.
//! * [`two_phase_two_ruling`]: `ceil(k^eps)` machines take turns adding a
//!   local MIS, then the low-degree residue is handed to
//!   [`msg_efficient_two_ruling`].
//! * [`msg_efficient_two_ruling`]: a 2-ruling set whose message count grows
//!   like `n log n`, independent of the edge count.

mod hierarchical;
mod msg_efficient;
mod two_phase;

pub use hierarchical::{beta_ruling_set_kmachine, beta_ruling_set_report, HierarchyReport, IterationStats};
pub use msg_efficient::{msg_efficient_two_ruling, msg_efficient_report, Category, MsgEfficientReport};
pub use two_phase::{
    optimal_epsilon, phase_one, two_phase_two_ruling, two_phase_report, PhaseOne, TwoPhaseConfig, TwoPhaseReport,
};

use serde::Serialize;

use crate::error::Result;
use crate::graph::{Graph, VertexSet};
use crate::kmachine::RoundMetrics;
use crate::verify::is_beta_ruling_set;

/// One line of algorithm output, as written by the experiment harness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RulingSummary {
    pub algorithm: String,
    pub beta: usize,
    pub k: usize,
    pub eps: Option<f64>,
    pub rounds: u64,
    pub messages: u64,
    pub output_size: usize,
    pub valid: bool,
}

impl RulingSummary {
    /// `valid` is always recomputed against `g`.
    pub fn new(
        algorithm: &str,
        g: &Graph,
        set: &VertexSet,
        beta: usize,
        k: usize,
        eps: Option<f64>,
        metrics: &RoundMetrics,
    ) -> Result<Self> {
        Ok(RulingSummary {
            algorithm: algorithm.to_string(),
            beta,
            k,
            eps,
            rounds: metrics.rounds,
            messages: metrics.total_messages,
            output_size: set.len(),
            valid: is_beta_ruling_set(g, set, beta)?.ok,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_recomputes_validity() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let m = RoundMetrics {
            rounds: 4,
            total_messages: 9,
            max_link_load_per_round: 1,
        };
        let good = RulingSummary::new("x", &p3, &VertexSet::from(vec![1]), 1, 2, None, &m).unwrap();
        assert!(good.valid);
        let bad = RulingSummary::new("x", &p3, &VertexSet::from(vec![0]), 1, 2, None, &m).unwrap();
        assert!(!bad.valid);
        let json = serde_json::to_value(&good).unwrap();
        for key in ["algorithm", "beta", "k", "eps", "rounds", "messages", "output_size", "valid"] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }
}
