use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_WORDS_PER_MESSAGE: usize = 3;

/// Link capacity: `bandwidth` messages of `words_per_message` id-sized words
/// per link per round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub k: usize,
    pub bandwidth: usize,
    pub words_per_message: usize,
}

impl EngineConfig {
    pub fn new(k: usize, bandwidth: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::TooFewMachines(k));
        }
        Ok(EngineConfig {
            k,
            bandwidth: bandwidth.max(1),
            words_per_message: DEFAULT_WORDS_PER_MESSAGE,
        })
    }

    /// Default budget for an `n`-vertex input: `B = ceil(log2 n)`, at least 1.
    pub fn for_graph(n: usize, k: usize) -> Result<Self> {
        Self::new(k, ceil_log2(n).max(1))
    }
}

pub(crate) fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Message {
    pub src: usize,
    pub dst: usize,
    pub payload: Vec<u64>,
}

impl Message {
    pub fn new(src: usize, dst: usize, payload: Vec<u64>) -> Self {
        Message { src, dst, payload }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundMetrics {
    pub rounds: u64,
    pub total_messages: u64,
    pub max_link_load_per_round: u64,
}

impl RoundMetrics {
    pub fn absorb(&mut self, other: &RoundMetrics) {
        self.rounds += other.rounds;
        self.total_messages += other.total_messages;
        self.max_link_load_per_round = self.max_link_load_per_round.max(other.max_link_load_per_round);
    }
}

/// Synchronous superstep engine. Messages sent in one superstep are visible
/// to receivers only after the barrier; a link carrying `L` messages keeps
/// the superstep open for `ceil(L / B)` rounds.
#[derive(Clone, Debug)]
pub struct Engine {
    config: EngineConfig,
    metrics: RoundMetrics,
    load: Vec<u32>,
}

impl Engine {
    pub fn new(config: EngineConfig) -> Self {
        Engine {
            load: vec![0; config.k * config.k],
            config,
            metrics: RoundMetrics::default(),
        }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn k(&self) -> usize {
        self.config.k
    }

    pub fn metrics(&self) -> RoundMetrics {
        self.metrics
    }

    /// A round in which nobody sends.
    pub fn idle(&mut self) {
        self.metrics.rounds += 1;
    }

    pub(crate) fn check(&self, m: &Message, holder: usize) -> Result<()> {
        let k = self.config.k;
        for machine in [m.src, m.dst] {
            if machine >= k {
                return Err(Error::MachineOutOfRange { machine, k });
            }
        }
        if m.src != holder {
            return Err(Error::InvalidMessage(format!(
                "message with src {} in outbox of machine {holder}",
                m.src
            )));
        }
        if m.src == m.dst {
            return Err(Error::InvalidMessage(format!("src == dst == {}", m.src)));
        }
        if m.payload.len() > self.config.words_per_message {
            return Err(Error::InvalidMessage(format!(
                "payload of {} words exceeds {}",
                m.payload.len(),
                self.config.words_per_message
            )));
        }
        Ok(())
    }

    /// One barrier. `outboxes[m]` holds the messages machine `m` sends;
    /// returns the inboxes indexed by destination.
    pub fn superstep(&mut self, outboxes: Vec<Vec<Message>>) -> Result<Vec<Vec<Message>>> {
        if outboxes.len() != self.config.k {
            return Err(Error::InvalidMessage(format!(
                "{} outboxes for k = {}",
                outboxes.len(),
                self.config.k
            )));
        }
        for (holder, out) in outboxes.iter().enumerate() {
            for m in out {
                self.check(m, holder)?;
            }
        }
        let sends = outboxes
            .into_iter()
            .map(|out| out.into_iter().map(|m| (m.dst, m)).collect())
            .collect();
        Ok(self
            .exchange(sends)
            .into_iter()
            .map(|inbox| inbox.into_iter().map(|(_, m)| m).collect())
            .collect())
    }

    /// Moves `(dst, item)` pairs across links. Costs at least one round.
    /// Items within an inbox are ordered by sender, then FIFO.
    pub(crate) fn exchange<T>(&mut self, sends: Vec<Vec<(usize, T)>>) -> Vec<Vec<(usize, T)>> {
        let k = self.config.k;
        let b = self.config.bandwidth as u64;
        self.load.iter_mut().for_each(|x| *x = 0);
        let mut inboxes: Vec<Vec<(usize, T)>> = (0..k).map(|_| Vec::new()).collect();
        let mut total = 0u64;
        for (src, out) in sends.into_iter().enumerate() {
            for (dst, item) in out {
                debug_assert!(dst < k && dst != src);
                self.load[src * k + dst] += 1;
                total += 1;
                inboxes[dst].push((src, item));
            }
        }
        let max_load = self.load.iter().copied().max().unwrap_or(0) as u64;
        let rounds = max_load.div_ceil(b).max(1);
        let per_round = max_load.min(b);
        assert!(per_round <= b, "link budget exceeded");
        self.metrics.rounds += rounds;
        self.metrics.total_messages += total;
        self.metrics.max_link_load_per_round = self.metrics.max_link_load_per_round.max(per_round);
        inboxes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine(k: usize, b: usize) -> Engine {
        Engine::new(EngineConfig::new(k, b).unwrap())
    }

    fn msg(src: usize, dst: usize, x: u64) -> Message {
        Message::new(src, dst, vec![x])
    }

    #[test]
    fn bandwidth_default() {
        assert_eq!(EngineConfig::for_graph(1000, 4).unwrap().bandwidth, 10);
        assert_eq!(EngineConfig::for_graph(1024, 4).unwrap().bandwidth, 10);
        assert_eq!(EngineConfig::for_graph(1025, 4).unwrap().bandwidth, 11);
        assert_eq!(EngineConfig::for_graph(1, 4).unwrap().bandwidth, 1);
        assert!(EngineConfig::new(1, 3).is_err());
    }

    #[test]
    fn silent_superstep_costs_one_round() {
        let mut e = engine(3, 2);
        let inbox = e.superstep(vec![vec![], vec![], vec![]]).unwrap();
        assert!(inbox.iter().all(Vec::is_empty));
        assert_eq!(e.metrics().rounds, 1);
        assert_eq!(e.metrics().total_messages, 0);
    }

    #[test]
    fn overflow_splits_across_rounds() {
        let mut e = engine(2, 3);
        let out = vec![(0..4).map(|x| msg(0, 1, x)).collect(), vec![]];
        let inbox = e.superstep(out).unwrap();
        assert_eq!(inbox[1].len(), 4);
        assert_eq!(e.metrics().rounds, 2);
        assert_eq!(e.metrics().max_link_load_per_round, 3);
    }

    #[test]
    fn rounds_are_ceil_of_max_load() {
        for (load, b) in [(1usize, 1usize), (7, 2), (8, 2), (9, 4), (20, 5)] {
            let mut e = engine(3, b);
            let out = vec![
                (0..load).map(|x| msg(0, 2, x as u64)).collect(),
                vec![msg(1, 0, 0)],
                vec![],
            ];
            e.superstep(out).unwrap();
            assert_eq!(e.metrics().rounds as usize, load.div_ceil(b));
            assert!(e.metrics().max_link_load_per_round as usize <= b);
        }
    }

    #[test]
    fn rejects_malformed_messages() {
        let mut e = engine(2, 1);
        assert!(e.superstep(vec![vec![msg(0, 2, 1)], vec![]]).is_err());
        assert!(e.superstep(vec![vec![msg(0, 0, 1)], vec![]]).is_err());
        assert!(e.superstep(vec![vec![msg(1, 0, 1)], vec![]]).is_err());
        let fat = Message::new(0, 1, vec![0; 4]);
        assert!(e.superstep(vec![vec![fat], vec![]]).is_err());
        assert!(e.superstep(vec![vec![]]).is_err());
    }
}
