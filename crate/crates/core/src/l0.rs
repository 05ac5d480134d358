//! L0 sampling over a dynamic multiset of integer ids.
//!
//! A sampler keeps `R` independent repetitions. Each repetition hashes ids
//! to geometric levels (level `>= j` with probability `2^-j`) and keeps, per
//! level, the signed tallies of everything hashed at or above it:
//!
//! * `count = Σ delta`
//! * `id_sum = Σ delta * id`
//! * `fingerprint = Σ delta * r^id  (mod 2^61 - 1)`
//!
//! A level holding a single distinct id is recognised by `id_sum / count`
//! being an id whose fingerprint matches. The sketch is linear, so the
//! order of updates never matters.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::{tag, Seed};

/// The Mersenne prime `2^61 - 1`.
pub const PRIME: u64 = (1 << 61) - 1;

#[inline]
fn reduce(x: u128) -> u64 {
    let lo = (x as u64) & PRIME;
    let hi = (x >> 61) as u64;
    let s = lo + (hi & PRIME) + ((x >> 122) as u64);
    let s = (s & PRIME) + (s >> 61);
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64) -> u64 {
    reduce(a as u128 * b as u128)
}

#[inline]
fn add_mod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

/// `delta` as a field element.
#[inline]
fn field(delta: i64) -> u64 {
    (delta as i128).rem_euclid(PRIME as i128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    base %= PRIME;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// Independence of the level hash in a standalone sampler.
const SAMPLER_WISE: usize = 4;
/// Independence of the level hash in bank members.
const BANK_WISE: usize = 2;

/// Polynomial of degree `D - 1` over the prime field: `D`-wise independent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct LevelHash<const D: usize>([u64; D]);

impl<const D: usize> LevelHash<D> {
    fn new(seed: Seed, key: &[u64]) -> Self {
        let mut k = key.to_vec();
        k.push(0);
        let mut c = [0u64; D];
        for (i, slot) in c.iter_mut().enumerate() {
            *k.last_mut().unwrap() = i as u64;
            *slot = seed.bits(tag::SAMPLER, &k) % PRIME;
        }
        LevelHash(c)
    }

    #[inline]
    fn eval(&self, x: u64) -> u64 {
        let mut h = self.0[D - 1];
        for &c in self.0[..D - 1].iter().rev() {
            h = add_mod(mul_mod(h, x), c);
        }
        h
    }

    /// Trailing zeros of the low `levels` bits, capped at `levels - 1`.
    #[inline]
    fn level(&self, x: u64, levels: usize) -> usize {
        let mask = (1u64 << levels) - 1;
        ((self.eval(x) & mask).trailing_zeros() as usize).min(levels - 1)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LevelState {
    pub count: i64,
    pub id_sum: i64,
    pub fingerprint: u64,
}

impl LevelState {
    fn is_zero(&self) -> bool {
        self.count == 0 && self.id_sum == 0 && self.fingerprint == 0
    }

    /// The single id held here, if any.
    fn recover(&self, universe: u64, base: u64) -> Option<u64> {
        if self.count == 0 || self.id_sum % self.count != 0 {
            return None;
        }
        let id = self.id_sum / self.count;
        if id < 0 || id as u64 >= universe {
            return None;
        }
        let expect = mul_mod(field(self.count), pow_mod(base, id as u64));
        (expect == self.fingerprint).then_some(id as u64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Repetition {
    hash: LevelHash<SAMPLER_WISE>,
    /// Grown on demand up to the highest level touched.
    levels: Vec<LevelState>,
}

impl Repetition {
    fn new(hash: LevelHash<SAMPLER_WISE>) -> Self {
        Repetition {
            hash,
            levels: Vec::new(),
        }
    }

    #[inline]
    fn update(&mut self, item: u64, delta: i64, weighted: i64, step: u64, level_count: usize) {
        let top = self.hash.level(item, level_count);
        if self.levels.len() <= top {
            self.levels.resize(top + 1, LevelState::default());
        }
        for lvl in &mut self.levels[..=top] {
            lvl.count += delta;
            lvl.id_sum += weighted;
            lvl.fingerprint = add_mod(lvl.fingerprint, step);
        }
    }

    fn is_zero(&self) -> bool {
        self.levels.iter().all(LevelState::is_zero)
    }

    fn decode(&self, universe: u64, base: u64) -> Option<u64> {
        self.levels.iter().rev().find_map(|l| l.recover(universe, base))
    }
}

/// Outcome of [`L0Sampler::query`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sample {
    Item(u64),
    /// Support is nonempty but no level could be decoded.
    Fail,
    Empty,
}

#[derive(Clone, Debug, PartialEq)]
pub struct L0Sampler {
    universe: u64,
    level_count: usize,
    delta: f64,
    base: u64,
    reps: Vec<Repetition>,
}

/// `ceil(log2 u) + 1`.
pub fn level_count(universe: u64) -> usize {
    (64 - universe.saturating_sub(1).leading_zeros()) as usize + 1
}

/// Repetitions for failure probability `delta`: `max(1, ceil(log2(1/delta)))`.
pub fn repetitions(delta: f64) -> usize {
    ((1.0 / delta).log2().ceil() as usize).max(1)
}

/// Fingerprint evaluation point drawn from `seed`; never 0 or 1.
pub fn fingerprint_base(seed: Seed, key: &[u64]) -> u64 {
    2 + seed.bits(tag::SAMPLER, key) % (PRIME - 2)
}

impl L0Sampler {
    /// Sampler over ids in `[0, universe)` failing with probability at
    /// most about `delta`.
    pub fn new(universe: u64, delta: f64, seed: Seed) -> Result<Self> {
        Self::with_base(universe, delta, seed, fingerprint_base(seed, &[u64::MAX]))
    }

    /// As [`L0Sampler::new`] with an explicit fingerprint base, so a bank of
    /// samplers can share one `base^id` per update.
    pub fn with_base(universe: u64, delta: f64, seed: Seed, base: u64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidProbability(delta));
        }
        if universe == 0 || universe >= PRIME {
            return Err(Error::Config(format!("sampler universe {universe} outside [1, 2^61 - 1)")));
        }
        let reps = (0..repetitions(delta))
            .map(|i| Repetition::new(LevelHash::new(seed, &[i as u64])))
            .collect();
        Ok(L0Sampler {
            universe,
            level_count: level_count(universe),
            delta,
            base,
            reps,
        })
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }

    pub fn level_count(&self) -> usize {
        self.level_count
    }

    pub fn repetition_count(&self) -> usize {
        self.reps.len()
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    /// Adds `delta` copies of `item` (negative removes).
    pub fn update(&mut self, item: u64, delta: i64) {
        let power = pow_mod(self.base, item);
        self.update_with_power(item, delta, power);
    }

    /// As [`L0Sampler::update`] with `base^item` supplied by the caller.
    pub fn update_with_power(&mut self, item: u64, delta: i64, power: u64) {
        assert!(item < self.universe, "id {item} outside universe {}", self.universe);
        let step = mul_mod(field(delta), power);
        let weighted = delta * item as i64;
        for rep in &mut self.reps {
            rep.update(item, delta, weighted, step, self.level_count);
        }
    }

    /// Scans each repetition from its highest level down and returns the
    /// first decodable id.
    pub fn query(&self) -> Sample {
        if self.reps.iter().all(Repetition::is_zero) {
            return Sample::Empty;
        }
        self.reps
            .iter()
            .find_map(|r| r.decode(self.universe, self.base))
            .map_or(Sample::Fail, Sample::Item)
    }

    /// Net multiplicity of everything in the sketch.
    pub fn total_count(&self) -> i64 {
        self.reps[0].levels.first().map_or(0, |l| l.count)
    }

    /// State of repetition `rep`, level `level`.
    pub fn level(&self, rep: usize, level: usize) -> LevelState {
        self.reps[rep].levels.get(level).copied().unwrap_or_default()
    }

    /// All `(count, id_sum, fingerprint)` triples, repetition-major, every
    /// repetition padded to [`L0Sampler::level_count`] levels.
    pub fn to_triples(&self) -> Vec<(i64, i64, u64)> {
        let mut out = Vec::with_capacity(self.reps.len() * self.level_count);
        for r in 0..self.reps.len() {
            for l in 0..self.level_count {
                let s = self.level(r, l);
                out.push((s.count, s.id_sum, s.fingerprint));
            }
        }
        out
    }
}

/// Many samplers over one universe sharing a fingerprint base, with
/// independent level hashes. Each member has the repetitions needed for its
/// failure probability `delta`.
///
/// Level 0 of every repetition holds the whole multiset, so with a shared
/// base it is the same for all of them and is kept once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplerBank {
    universe: u64,
    level_count: usize,
    base: u64,
    /// Repetitions per member.
    per_member: usize,
    whole: LevelState,
    hashes: Vec<LevelHash<BANK_WISE>>,
    /// `upper[r][j]` is level `j + 1` of repetition `r`.
    upper: Vec<Vec<LevelState>>,
}

impl SamplerBank {
    /// `size` samplers; `key` separates banks drawn from one seed.
    pub fn new(universe: u64, size: usize, delta: f64, seed: Seed, key: u64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidProbability(delta));
        }
        if universe == 0 || universe >= PRIME {
            return Err(Error::Config(format!("sampler universe {universe} outside [1, 2^61 - 1)")));
        }
        let per_member = repetitions(delta);
        let total = size * per_member;
        Ok(SamplerBank {
            universe,
            level_count: level_count(universe),
            base: fingerprint_base(seed, &[key, u64::MAX]),
            per_member,
            whole: LevelState::default(),
            hashes: (0..total).map(|i| LevelHash::new(seed, &[key, i as u64])).collect(),
            upper: vec![Vec::new(); total],
        })
    }

    /// Number of member samplers.
    pub fn len(&self) -> usize {
        self.hashes.len() / self.per_member
    }

    pub fn is_empty(&self) -> bool {
        self.hashes.is_empty()
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn update(&mut self, item: u64, delta: i64) {
        let power = pow_mod(self.base, item);
        self.update_with_power(item, delta, power);
    }

    /// As [`SamplerBank::update`] with `base^item` supplied by the caller.
    pub fn update_with_power(&mut self, item: u64, delta: i64, power: u64) {
        assert!(item < self.universe, "id {item} outside universe {}", self.universe);
        let step = mul_mod(field(delta), power);
        let weighted = delta * item as i64;
        self.whole.count += delta;
        self.whole.id_sum += weighted;
        self.whole.fingerprint = add_mod(self.whole.fingerprint, step);
        for (hash, upper) in self.hashes.iter().zip(&mut self.upper) {
            let top = hash.level(item, self.level_count);
            if top == 0 {
                continue;
            }
            if upper.len() < top {
                upper.resize(top, LevelState::default());
            }
            for lvl in &mut upper[..top] {
                lvl.count += delta;
                lvl.id_sum += weighted;
                lvl.fingerprint = add_mod(lvl.fingerprint, step);
            }
        }
    }

    /// Net multiplicity of the sketched multiset.
    pub fn total_count(&self) -> i64 {
        self.whole.count
    }

    fn decode(&self, r: usize) -> Option<u64> {
        self.upper[r]
            .iter()
            .rev()
            .chain(std::iter::once(&self.whole))
            .find_map(|l| l.recover(self.universe, self.base))
    }

    /// Queries every member.
    pub fn query_all(&self) -> Vec<Sample> {
        let empty = self.whole.is_zero() && self.upper.iter().flatten().all(LevelState::is_zero);
        (0..self.len())
            .map(|m| {
                if empty {
                    return Sample::Empty;
                }
                (m * self.per_member..(m + 1) * self.per_member)
                    .find_map(|r| self.decode(r))
                    .map_or(Sample::Fail, Sample::Item)
            })
            .collect()
    }

    /// Distinct ids recovered by the members, ascending.
    pub fn recovered(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .query_all()
            .into_iter()
            .filter_map(|s| match s {
                Sample::Item(x) => Some(x),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}
