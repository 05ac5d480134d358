use super::{decisions_to_set, default_max_rounds, run_beeping, BeepProgram, Decision};
use crate::error::Result;
use crate::graph::{Graph, VertexSet};
use crate::rng::Seed;

/// Two-round MIS exchange with an adaptive beep probability.
///
/// Even rounds: an undecided node beeps with probability `2^-e`. Odd rounds:
/// a node that beeped in the even round and heard nothing beeps again and
/// joins; undecided nodes hearing that beep drop out. Two adjacent nodes
/// that both beep in the even round hear each other, so joiners are never
/// adjacent.
///
/// `e` starts at 1. Hearing a beep in an even round halves the probability,
/// silence doubles it (capped at 1/2).
#[derive(Clone, Copy, Debug, Default)]
pub struct MisProgram;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MisState {
    exponent: u32,
    beeped: bool,
    heard: bool,
}

const MAX_EXPONENT: u32 = 63;

impl Default for MisState {
    fn default() -> Self {
        MisState {
            exponent: 1,
            beeped: false,
            heard: false,
        }
    }
}

impl MisState {
    /// Current beep probability `2^-e`.
    pub fn probability(&self) -> f64 {
        0.5f64.powi(self.exponent as i32)
    }
}

impl BeepProgram for MisProgram {
    type State = MisState;

    fn init(&self, _node: usize, _degree: usize) -> MisState {
        MisState::default()
    }

    fn beep(&self, state: &MisState, round: u64, coin: u64) -> bool {
        if round % 2 == 0 {
            // top `e` bits all zero: probability exactly 2^-e
            coin >> (64 - state.exponent) == 0
        } else {
            state.beeped && !state.heard
        }
    }

    fn observe(&self, state: &MisState, round: u64, beeped: bool, heard: bool) -> (MisState, Decision) {
        if round % 2 == 0 {
            let exponent = if heard {
                (state.exponent + 1).min(MAX_EXPONENT)
            } else {
                state.exponent.saturating_sub(1).max(1)
            };
            return (
                MisState {
                    exponent,
                    beeped,
                    heard,
                },
                Decision::Undecided,
            );
        }
        let d = if beeped {
            Decision::In
        } else if heard {
            Decision::Out
        } else {
            Decision::Undecided
        };
        let next = MisState {
            exponent: state.exponent,
            beeped: false,
            heard: false,
        };
        (next, d)
    }
}

/// MIS of `g` by running [`MisProgram`] directly.
pub fn beeping_mis(g: &Graph, seed: Seed) -> Result<VertexSet> {
    let (decisions, _) = run_beeping(&MisProgram, g, seed, default_max_rounds(g.n()))?;
    Ok(decisions_to_set(&decisions))
}
