//! Seed-deterministic simulation of symmetry-breaking algorithms on large
//! graphs.
//!
//! * [`kmachine`]: the k-machine model (random vertex partition, per-link
//!   bandwidth, superstep engine, randomized routing).
//! * [`beeping`]: beeping-model programs, a beeping MIS, and their exact
//!   simulation on the k-machine engine.
//! * [`ruling`]: k-machine ruling sets (hierarchical sampling, two-phase
//!   2-ruling set, message-efficient 2-ruling set).
//! * [`streaming`] and [`l0`]: one-pass ruling sets over insertion-only and
//!   insertion-deletion edge streams.
//! * [`verify`]: independent correctness oracles.
//! * [`experiment`]: the harness behind the `symbreak` binary.
//!
//! Every random choice is keyed by `(seed, purpose, ids...)` through
//! [`rng::Seed`], so runs are reproducible and independent of evaluation order.

pub mod beeping;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod kmachine;
pub mod l0;
pub mod rng;
pub mod ruling;
pub mod streaming;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use rng::Seed;
