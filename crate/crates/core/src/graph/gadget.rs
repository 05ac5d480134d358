//! The 14-node two-party gadget and disjoint unions of random gadgets.
//!
//! Vertex layout of gadget `g`: `u_i -> 14g + (i - 1)`, `v_i -> 14g + 7 + (i - 1)`
//! for `i` in `1..=7`.

use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};
use crate::rng::{tag, Seed};

/// A 7-digit vector over `1..=7`. Valid vectors are transpositions of the
/// identity `1234567`: exactly two positions differ and they point at each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GadgetVector([u8; 7]);

impl GadgetVector {
    pub fn new(digits: [u8; 7]) -> Result<Self> {
        let v = GadgetVector(digits);
        if v.is_valid() {
            Ok(v)
        } else {
            Err(Error::InvalidGadgetVector(v.to_string()))
        }
    }

    /// Wraps digits without checking validity.
    pub fn unchecked(digits: [u8; 7]) -> Self {
        GadgetVector(digits)
    }

    pub fn digits(&self) -> [u8; 7] {
        self.0
    }

    pub fn is_valid(&self) -> bool {
        if self.0.iter().any(|&d| !(1..=7).contains(&d)) {
            return false;
        }
        let moved: Vec<usize> = (0..7).filter(|&i| self.0[i] as usize != i + 1).collect();
        match moved[..] {
            [i, j] => self.0[i] as usize == j + 1 && self.0[j] as usize == i + 1,
            _ => false,
        }
    }

    /// The 0-based index pair `(i, j)`, `i < j`, swapped by a valid vector.
    pub fn special_pair(&self) -> Option<(usize, usize)> {
        if !self.is_valid() {
            return None;
        }
        let mut moved = (0..7).filter(|&i| self.0[i] as usize != i + 1);
        Some((moved.next()?, moved.next()?))
    }

    fn transposition(i: usize, j: usize) -> Self {
        let mut d = [1, 2, 3, 4, 5, 6, 7];
        d.swap(i, j);
        GadgetVector(d)
    }
}

impl fmt::Display for GadgetVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for GadgetVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.trim().as_bytes();
        if bytes.len() != 7 || !bytes.iter().all(u8::is_ascii_digit) {
            return Err(Error::InvalidGadgetVector(s.to_string()));
        }
        let mut d = [0u8; 7];
        for (slot, b) in d.iter_mut().zip(bytes) {
            *slot = b - b'0';
        }
        GadgetVector::new(d)
    }
}

/// All 21 valid vectors in lexicographic order.
pub fn valid_vectors() -> Vec<GadgetVector> {
    let mut out: Vec<GadgetVector> = (0..7)
        .flat_map(|i| ((i + 1)..7).map(move |j| GadgetVector::transposition(i, j)))
        .collect();
    out.sort();
    out
}

fn gadget_edges(x: &GadgetVector, y: &GadgetVector, base: usize) -> Result<[(usize, usize); 9]> {
    let (xi, xj) = x
        .special_pair()
        .ok_or_else(|| Error::InvalidGadgetVector(x.to_string()))?;
    let (yi, yj) = y
        .special_pair()
        .ok_or_else(|| Error::InvalidGadgetVector(y.to_string()))?;
    let mut edges = [(0, 0); 9];
    for (i, e) in edges.iter_mut().take(7).enumerate() {
        *e = (base + i, base + 7 + i);
    }
    edges[7] = (base + xi, base + xj);
    edges[8] = (base + 7 + yi, base + 7 + yj);
    Ok(edges)
}

/// One gadget: 7 matching edges `(u_i, v_i)` plus the special edge of `x` on
/// the u-side and of `y` on the v-side.
pub fn gen_gadget(x: &GadgetVector, y: &GadgetVector) -> Result<Graph> {
    Graph::from_edges(14, gadget_edges(x, y, 0)?)
}

/// Disjoint union of `n / 14` gadgets with independent uniform valid vectors.
pub fn gen_lower_bound_graph(n: usize, seed: Seed) -> Result<Graph> {
    if n % 14 != 0 {
        return Err(Error::GadgetCount(n));
    }
    let vectors = valid_vectors();
    let mut edges = Vec::with_capacity(9 * n / 14);
    for g in 0..n / 14 {
        let pick = |side: u64| {
            vectors[seed.below(tag::GADGET, &[g as u64, side], vectors.len() as u64) as usize]
        };
        edges.extend(gadget_edges(&pick(0), &pick(1), 14 * g)?);
    }
    Graph::from_edges(n, edges)
}
