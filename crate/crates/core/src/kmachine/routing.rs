use rand::seq::SliceRandom;

use super::engine::{Engine, EngineConfig, Message, RoundMetrics};
use crate::error::Result;
use crate::rng::{tag, Seed};

/// Randomized routing on a fresh engine. Returns the inboxes (indexed by
/// final destination) and the metrics of this call alone.
pub fn route(
    outboxes: Vec<Vec<Message>>,
    config: EngineConfig,
    seed: Seed,
) -> Result<(Vec<Vec<Message>>, RoundMetrics)> {
    let mut engine = Engine::new(config);
    let inboxes = engine.route(outboxes, seed)?;
    Ok((inboxes, engine.metrics()))
}

impl Engine {
    /// Delivers every message via random intermediates, repeating phases
    /// until nothing is left unsent:
    ///
    /// 1. each machine marks each unsent message with probability
    ///    `min(k / Y, 1)`, `Y` its current unsent count;
    /// 2. marked messages are shuffled and the `i`-th goes to machine `i mod k`;
    /// 3. intermediates forward to the final destination.
    ///
    /// Steps 2 and 3 are supersteps, so several messages on one link go out
    /// `B` per round. All-empty outboxes cost zero rounds.
    pub fn route(&mut self, outboxes: Vec<Vec<Message>>, seed: Seed) -> Result<Vec<Vec<Message>>> {
        let k = self.k();
        if outboxes.len() != k {
            return Err(crate::error::Error::InvalidMessage(format!(
                "{} outboxes for k = {k}",
                outboxes.len()
            )));
        }
        for (holder, out) in outboxes.iter().enumerate() {
            for m in out {
                self.check(m, holder)?;
            }
        }
        let sent: usize = outboxes.iter().map(Vec::len).sum();
        let mut unsent = outboxes;
        let mut delivered: Vec<Vec<Message>> = vec![Vec::new(); k];

        let mut phase = 0u64;
        while unsent.iter().any(|u| !u.is_empty()) {
            let mut scatter: Vec<Vec<(usize, Message)>> = (0..k).map(|_| Vec::new()).collect();
            let mut held: Vec<Vec<Message>> = vec![Vec::new(); k];

            for m in 0..k {
                let y = unsent[m].len();
                if y == 0 {
                    continue;
                }
                let p = (k as f64 / y as f64).min(1.0);
                let mut marked = Vec::new();
                let mut rest = Vec::new();
                for (idx, msg) in std::mem::take(&mut unsent[m]).into_iter().enumerate() {
                    if seed.coin(tag::ROUTE_MARK, &[phase, m as u64, idx as u64], p) {
                        marked.push(msg);
                    } else {
                        rest.push(msg);
                    }
                }
                unsent[m] = rest;
                marked.shuffle(&mut seed.rng(tag::ROUTE_PERMUTE, &[phase, m as u64]));
                for (i, msg) in marked.into_iter().enumerate() {
                    let mid = i % k;
                    if mid == m {
                        held[m].push(msg);
                    } else {
                        scatter[m].push((mid, msg));
                    }
                }
            }

            if scatter.iter().any(|s| !s.is_empty()) {
                for (mid, inbox) in self.exchange(scatter).into_iter().enumerate() {
                    held[mid].extend(inbox.into_iter().map(|(_, msg)| msg));
                }
            }

            let mut relay: Vec<Vec<(usize, Message)>> = (0..k).map(|_| Vec::new()).collect();
            for (mid, msgs) in held.into_iter().enumerate() {
                for msg in msgs {
                    if msg.dst == mid {
                        delivered[mid].push(msg);
                    } else {
                        relay[mid].push((msg.dst, msg));
                    }
                }
            }
            if relay.iter().any(|r| !r.is_empty()) {
                for (dst, inbox) in self.exchange(relay).into_iter().enumerate() {
                    delivered[dst].extend(inbox.into_iter().map(|(_, msg)| msg));
                }
            }
            phase += 1;
        }
        debug_assert_eq!(delivered.iter().map(Vec::len).sum::<usize>(), sent);
        Ok(delivered)
    }
}
