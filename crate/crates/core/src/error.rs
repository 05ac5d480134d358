use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: malformed entry {content:?}")]
    Malformed { line: usize, content: String },

    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },

    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid gadget vector {0:?}")]
    InvalidGadgetVector(String),

    #[error("lower-bound graph needs n divisible by 14, got {0}")]
    GadgetCount(usize),

    #[error("graph has {n} vertices, brute force supports at most {max}")]
    GraphTooLarge { n: usize, max: usize },

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("k-machine model needs k >= 2, got {0}")]
    TooFewMachines(usize),

    #[error("machine {machine} does not exist (k = {k})")]
    MachineOutOfRange { machine: usize, k: usize },

    #[error("invalid message: {0}")]
    InvalidMessage(String),

    #[error("beta must be >= 1, got {0}")]
    InvalidBeta(usize),

    #[error("epsilon {0} outside [0, 1]")]
    InvalidEpsilon(f64),

    #[error("max_rounds must be >= 1")]
    ZeroRoundBudget,

    #[error("no termination after {rounds} rounds, {undecided} nodes undecided")]
    NonTermination { rounds: u64, undecided: usize },

    #[error("line {line}: delete of absent edge ({u}, {v})")]
    DeleteAbsent { line: usize, u: usize, v: usize },

    #[error("line {line}: duplicate insert of edge ({u}, {v})")]
    DuplicateInsert { line: usize, u: usize, v: usize },

    #[error("delete event ({u}, {v}) in an insertion-only stream")]
    DeleteInInsertionOnly { u: usize, v: usize },

    #[error("sampler bank of vertex {vertex} recovered {recovered} distinct edges, needed {required}")]
    SamplerBankFailure {
        vertex: usize,
        recovered: usize,
        required: usize,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code for the CLI: 2 for bad parameters, 3 for bad
    /// input, 1 for failures during a run.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidGadgetVector(_)
            | Error::GadgetCount(_)
            | Error::GraphTooLarge { .. }
            | Error::InvalidProbability(_)
            | Error::TooFewMachines(_)
            | Error::InvalidBeta(_)
            | Error::InvalidEpsilon(_)
            | Error::ZeroRoundBudget
            | Error::Config(_) => 2,
            Error::Malformed { .. }
            | Error::SelfLoop { .. }
            | Error::VertexOutOfRange { .. }
            | Error::DeleteAbsent { .. }
            | Error::DuplicateInsert { .. }
            | Error::DeleteInInsertionOnly { .. }
            | Error::Io { .. } => 3,
            _ => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
