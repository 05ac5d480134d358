//! Beeping-model execution.
//!
//! In every round each undecided node either beeps or listens; afterwards a
//! node only learns whether at least one neighbor beeped. A beep by `v`
//! counts as `degree(v)` messages toward the message complexity `msg`.
//!
//! [`run_beeping`] executes a program directly on the graph. [`simulate_in_kmachine`]
//! executes the same program on the k-machine engine, where beeps travel as
//! aggregated notifications between machines. Both draw node coins from
//! `(seed, node, round)`, so their traces agree exactly.

mod mis;
mod simulate;

pub use mis::{beeping_mis, MisProgram, MisState};
pub use simulate::{beep_notifications, simulate_in_kmachine, simulate_on, KMachineRun};

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rng::{tag, Seed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Decision {
    Undecided,
    In,
    Out,
}

/// A node program. Both methods must be pure: everything random comes in
/// through `coin`.
pub trait BeepProgram {
    type State: Clone + std::fmt::Debug;

    fn init(&self, node: usize, degree: usize) -> Self::State;

    /// Whether an undecided node beeps in `round`.
    fn beep(&self, state: &Self::State, round: u64, coin: u64) -> bool;

    /// Folds in what the node observed in `round`.
    fn observe(&self, state: &Self::State, round: u64, beeped: bool, heard: bool) -> (Self::State, Decision);
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RoundTrace {
    pub beepers: Vec<usize>,
    /// Nodes with at least one beeping neighbor.
    pub heard: Vec<usize>,
    /// `a_t`: sum of the degrees of this round's beepers.
    pub messages: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BeepTrace {
    pub rounds: Vec<RoundTrace>,
    pub msg: u64,
}

impl BeepTrace {
    /// Number of rounds `T`.
    pub fn t(&self) -> u64 {
        self.rounds.len() as u64
    }

    /// `{T, msg, per_round}`; per-round detail only when `verbose`.
    pub fn to_json(&self, verbose: bool) -> serde_json::Value {
        let mut v = json!({ "T": self.t(), "msg": self.msg });
        if verbose {
            v["per_round"] = self
                .rounds
                .iter()
                .map(|r| json!({ "beepers": r.beepers, "heard": r.heard, "a_t": r.messages }))
                .collect();
        }
        v
    }
}

/// Round cap: 64 round-pairs per `ceil(log2(n + 2))`.
pub fn default_max_rounds(n: usize) -> u64 {
    128 * crate::kmachine::ceil_log2(n + 2) as u64
}

/// Shared round loop. `hear` turns the round's beeping mask into heard flags.
pub(crate) fn drive<P, H>(
    prog: &P,
    g: &Graph,
    seed: Seed,
    max_rounds: u64,
    initial: Option<&[Decision]>,
    mut hear: H,
) -> Result<(Vec<Decision>, BeepTrace)>
where
    P: BeepProgram,
    H: FnMut(u64, &[usize], &[bool]) -> Result<Vec<bool>>,
{
    if max_rounds == 0 {
        return Err(Error::ZeroRoundBudget);
    }
    let n = g.n();
    let mut state: Vec<P::State> = (0..n).map(|v| prog.init(v, g.degree(v))).collect();
    let mut decision = match initial {
        Some(d) => d.to_vec(),
        None => vec![Decision::Undecided; n],
    };
    let mut open: Vec<usize> = (0..n).filter(|&v| decision[v] == Decision::Undecided).collect();
    let mut trace = BeepTrace::default();
    let mut beeping = vec![false; n];
    let mut round = 0u64;

    while !open.is_empty() {
        if round == max_rounds {
            return Err(Error::NonTermination {
                rounds: round,
                undecided: open.len(),
            });
        }
        let beepers: Vec<usize> = open
            .iter()
            .copied()
            .filter(|&v| prog.beep(&state[v], round, seed.bits(tag::BEEP, &[v as u64, round])))
            .collect();
        for &v in &beepers {
            beeping[v] = true;
        }
        let heard = hear(round, &beepers, &beeping)?;
        debug_assert_eq!(heard.len(), n);

        open.retain(|&v| {
            let (next, d) = prog.observe(&state[v], round, beeping[v], heard[v]);
            state[v] = next;
            decision[v] = d;
            d == Decision::Undecided
        });

        let messages = beepers.iter().map(|&v| g.degree(v) as u64).sum();
        for &v in &beepers {
            beeping[v] = false;
        }
        trace.msg += messages;
        trace.rounds.push(RoundTrace {
            beepers,
            heard: (0..n).filter(|&v| heard[v]).collect(),
            messages,
        });
        round += 1;
    }
    Ok((decision, trace))
}

/// Runs `prog` directly on `g`.
pub fn run_beeping<P: BeepProgram>(
    prog: &P,
    g: &Graph,
    seed: Seed,
    max_rounds: u64,
) -> Result<(Vec<Decision>, BeepTrace)> {
    run_beeping_from(prog, g, seed, max_rounds, None)
}

/// As [`run_beeping`], with some nodes decided up front (they never beep).
pub fn run_beeping_from<P: BeepProgram>(
    prog: &P,
    g: &Graph,
    seed: Seed,
    max_rounds: u64,
    initial: Option<&[Decision]>,
) -> Result<(Vec<Decision>, BeepTrace)> {
    drive(prog, g, seed, max_rounds, initial, |_, _, beeping| {
        Ok((0..g.n())
            .map(|v| g.neighbors(v).iter().any(|&w| beeping[w]))
            .collect())
    })
}

pub fn decisions_to_set(decisions: &[Decision]) -> VertexSet {
    decisions
        .iter()
        .enumerate()
        .filter_map(|(v, &d)| (d == Decision::In).then_some(v))
        .collect()
}
