//! Counter-based randomness.
//!
//! Every random decision in the crate is a pure function of a base seed, a
//! purpose tag and a short key (vertex id, round, machine, ...). Nothing
//! depends on the order in which decisions are drawn, so the k-machine
//! simulation and the direct beeping run see the same coins, and a graph
//! generator produces the same edges regardless of iteration order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Purpose tags. Distinct tags give unrelated substreams for the same key.
pub mod tag {
    pub const GNP: u64 = 0x01;
    pub const GADGET: u64 = 0x02;
    pub const PARTITION: u64 = 0x10;
    pub const ROUTE_MARK: u64 = 0x11;
    pub const ROUTE_PERMUTE: u64 = 0x12;
    pub const ROUTE_CALL: u64 = 0x13;
    pub const BEEP: u64 = 0x20;
    pub const RULING_MARK: u64 = 0x30;
    pub const RULING_PHASE: u64 = 0x31;
    pub const TWO_RULING_MARK: u64 = 0x32;
    pub const TWO_RULING_SAMPLE: u64 = 0x33;
    pub const LEVELS: u64 = 0x40;
    pub const SAMPLER: u64 = 0x41;
    pub const STREAM_ORDER: u64 = 0x42;
    pub const STREAM_DELETE: u64 = 0x43;
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Maps 64 random bits to a uniform float in `[0, 1)`.
#[inline]
pub fn unit_f64(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    /// 64 bits keyed by `(self, tag, key)`.
    #[inline]
    pub fn bits(self, tag: u64, key: &[u64]) -> u64 {
        let mut h = mix64(self.0 ^ mix64(tag.wrapping_mul(GOLDEN).wrapping_add(tag)));
        for (i, &k) in key.iter().enumerate() {
            h = mix64(h ^ mix64(k.wrapping_add((i as u64 + 1).wrapping_mul(GOLDEN))));
        }
        h
    }

    #[inline]
    pub fn unit(self, tag: u64, key: &[u64]) -> f64 {
        unit_f64(self.bits(tag, key))
    }

    /// Bernoulli(`p`) coin. `p >= 1` is always true, `p <= 0` always false.
    #[inline]
    pub fn coin(self, tag: u64, key: &[u64], p: f64) -> bool {
        if p >= 1.0 {
            return true;
        }
        self.unit(tag, key) < p
    }

    /// Uniform integer in `[0, bound)`; `bound` must be positive.
    #[inline]
    pub fn below(self, tag: u64, key: &[u64], bound: u64) -> u64 {
        debug_assert!(bound > 0);
        ((self.bits(tag, key) as u128 * bound as u128) >> 64) as u64
    }

    pub fn child(self, tag: u64, key: &[u64]) -> Seed {
        Seed(self.bits(tag, key))
    }

    /// A sequential generator for one keyed context (shuffles and the like).
    pub fn rng(self, tag: u64, key: &[u64]) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.bits(tag, key))
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}
