//! Experiment harness: input loading, algorithm dispatch, per-repetition
//! records and parameter sweeps.
//!
//! Every record's `valid` flag is recomputed by [`crate::verify`] on the
//! full input graph (the final graph for dynamic streams). Generated graphs
//! are drawn once from the base seed; repetition `r` runs the algorithm with
//! seed `base + r`.

use std::fmt;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::beeping::{simulate_in_kmachine, MisProgram};
use crate::error::{Error, Result};
use crate::graph::{gen_gnp, gen_lower_bound_graph, load_edge_list, Graph, VertexSet};
use crate::kmachine::RoundMetrics;
use crate::ruling::{beta_ruling_set_kmachine, msg_efficient_report, optimal_epsilon, two_phase_report, TwoPhaseConfig};
use crate::streaming::{dynamic_stream_ruling_set, stream_ruling_set, DynamicConfig, EdgeStream};
use crate::verify::is_beta_ruling_set;
use crate::Seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    MisKmachine,
    BetaRuling,
    TwoPhase,
    MsgEfficient,
    StreamBetaRuling,
    StreamDynamic,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::MisKmachine,
        Algorithm::BetaRuling,
        Algorithm::TwoPhase,
        Algorithm::MsgEfficient,
        Algorithm::StreamBetaRuling,
        Algorithm::StreamDynamic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::MisKmachine => "mis-kmachine",
            Algorithm::BetaRuling => "beta-ruling",
            Algorithm::TwoPhase => "two-phase",
            Algorithm::MsgEfficient => "msg-efficient",
            Algorithm::StreamBetaRuling => "stream-beta-ruling",
            Algorithm::StreamDynamic => "stream-dynamic",
        }
    }

    pub fn is_streaming(self) -> bool {
        matches!(self, Algorithm::StreamBetaRuling | Algorithm::StreamDynamic)
    }

    /// Ruling distance of the output for a given `beta` parameter.
    fn output_beta(self, beta: Option<usize>) -> usize {
        match self {
            Algorithm::MisKmachine => 1,
            Algorithm::TwoPhase | Algorithm::MsgEfficient => 2,
            _ => beta.unwrap_or(1),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| {
            let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
            Error::Config(format!("unknown algorithm {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GraphSource {
    File(PathBuf),
    Gnp { n: usize, p: f64 },
    /// Lower-bound graph of gadgets on `n` vertices.
    Gadget { n: usize },
}

impl GraphSource {
    fn load(&self, seed: Seed) -> Result<Graph> {
        match self {
            GraphSource::File(path) => load_edge_list(path),
            GraphSource::Gnp { n, p } => gen_gnp(*n, *p, seed),
            GraphSource::Gadget { n } => gen_lower_bound_graph(*n, seed),
        }
    }
}

impl fmt::Display for GraphSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSource::File(path) => write!(f, "file:{}", path.display()),
            GraphSource::Gnp { n, p } => write!(f, "gnp:{n}:{p}"),
            GraphSource::Gadget { n } => write!(f, "gadget:{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub graph: Option<GraphSource>,
    /// Event file for the streaming algorithms.
    pub stream: Option<PathBuf>,
    pub k: Option<usize>,
    pub beta: Option<usize>,
    /// Two-phase exponent; defaults to [`optimal_epsilon`].
    pub eps: Option<f64>,
    pub seed: u64,
    pub reps: usize,
    /// JSON-lines file the records are appended to.
    pub out: Option<PathBuf>,
    /// Attach the beeping trace to MIS records.
    pub trace: bool,
    /// Degree promise for the dynamic sampler banks; defaults to the final
    /// graph's maximum degree.
    pub degree_bound: Option<usize>,
    /// Fraction of edges deleted when a dynamic stream is built from a graph.
    pub deletions: f64,
}

impl ExperimentConfig {
    pub fn new(algorithm: Algorithm, graph: GraphSource) -> Self {
        ExperimentConfig {
            algorithm,
            graph: Some(graph),
            stream: None,
            k: None,
            beta: None,
            eps: None,
            seed: 0,
            reps: 1,
            out: None,
            trace: false,
            degree_bound: None,
            deletions: 0.2,
        }
    }

    /// Checks that the parameters the algorithm needs are present and sane.
    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::Config("reps must be >= 1".into()));
        }
        match (&self.graph, &self.stream) {
            (Some(_), Some(_)) => return Err(Error::Config("give either a graph or a stream, not both".into())),
            (None, None) => return Err(Error::Config("no input: give --graph, --gnp, --gadget or --stream".into())),
            (None, Some(_)) if !self.algorithm.is_streaming() => {
                return Err(Error::Config(format!("{} needs a graph, not a stream", self.algorithm)))
            }
            _ => {}
        }
        if let Some(GraphSource::Gnp { p, .. }) = &self.graph {
            if !(0.0..=1.0).contains(p) {
                return Err(Error::InvalidProbability(*p));
            }
        }
        if !self.algorithm.is_streaming() {
            match self.k {
                None => return Err(Error::Config(format!("{} needs --k", self.algorithm))),
                Some(k) if k < 2 => return Err(Error::TooFewMachines(k)),
                _ => {}
            }
        }
        if matches!(
            self.algorithm,
            Algorithm::BetaRuling | Algorithm::StreamBetaRuling | Algorithm::StreamDynamic
        ) {
            match self.beta {
                None => return Err(Error::Config(format!("{} needs --beta", self.algorithm))),
                Some(0) => return Err(Error::InvalidBeta(0)),
                _ => {}
            }
        }
        if let Some(eps) = self.eps {
            if !(0.0..=1.0).contains(&eps) {
                return Err(Error::InvalidEpsilon(eps));
            }
        }
        if !(0.0..=1.0).contains(&self.deletions) {
            return Err(Error::InvalidProbability(self.deletions));
        }
        Ok(())
    }

    fn input_label(&self) -> String {
        match (&self.graph, &self.stream) {
            (Some(g), _) => g.to_string(),
            (None, Some(path)) => format!("stream:{}", path.display()),
            _ => String::new(),
        }
    }
}

/// One repetition's outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRecord {
    pub algorithm: Algorithm,
    pub input: String,
    pub n: usize,
    pub m: usize,
    pub k: Option<usize>,
    pub beta: Option<usize>,
    pub eps: Option<f64>,
    pub seed: u64,
    pub rep: usize,
    pub rounds: Option<u64>,
    /// Machine-to-machine messages.
    pub messages: Option<u64>,
    /// Node-level messages, where the algorithm defines them.
    pub node_messages: Option<u64>,
    pub stored_edges: Option<usize>,
    pub sampler_count: Option<usize>,
    pub output_size: usize,
    pub valid: bool,
    pub wall_time_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<serde_json::Value>,
}

/// What the algorithm reports before verification.
#[derive(Default)]
struct Measured {
    set: VertexSet,
    metrics: Option<RoundMetrics>,
    node_messages: Option<u64>,
    stored_edges: Option<usize>,
    sampler_count: Option<usize>,
    eps: Option<f64>,
    trace: Option<serde_json::Value>,
}

/// Loaded input: the graph the output is checked against and, for streaming
/// algorithms, the stream itself.
struct Input {
    graph: Graph,
    stream: Option<EdgeStream>,
}

fn load_input(cfg: &ExperimentConfig) -> Result<Input> {
    let base = Seed(cfg.seed);
    if let Some(path) = &cfg.stream {
        let stream = EdgeStream::load(path)?;
        if cfg.algorithm == Algorithm::StreamBetaRuling && !stream.is_insertion_only() {
            return Err(Error::Config(format!(
                "{} needs an insertion-only stream; use stream-dynamic",
                cfg.algorithm
            )));
        }
        return Ok(Input {
            graph: stream.final_graph(),
            stream: Some(stream),
        });
    }
    let source = cfg.graph.as_ref().expect("validated config has an input");
    let g = source.load(base)?;
    let stream = match cfg.algorithm {
        Algorithm::StreamBetaRuling => Some(EdgeStream::insertions(&g, base)),
        Algorithm::StreamDynamic => Some(EdgeStream::insert_then_delete(&g, cfg.deletions, base)?),
        _ => None,
    };
    let graph = match &stream {
        Some(s) if !s.is_insertion_only() => s.final_graph(),
        _ => g,
    };
    Ok(Input { graph, stream })
}

fn run_once(cfg: &ExperimentConfig, input: &Input, seed: Seed) -> Result<Measured> {
    let g = &input.graph;
    let k = cfg.k.unwrap_or(0);
    let beta = cfg.beta.unwrap_or(1);
    Ok(match cfg.algorithm {
        Algorithm::MisKmachine => {
            let run = simulate_in_kmachine(&MisProgram, g, k, seed)?;
            Measured {
                set: crate::beeping::decisions_to_set(&run.decisions),
                metrics: Some(run.metrics),
                node_messages: Some(run.trace.msg),
                trace: cfg.trace.then(|| run.trace.to_json(true)),
                ..Measured::default()
            }
        }
        Algorithm::BetaRuling => {
            let (set, metrics) = beta_ruling_set_kmachine(g, beta, k, seed)?;
            Measured {
                set,
                metrics: Some(metrics),
                ..Measured::default()
            }
        }
        Algorithm::TwoPhase => {
            let eps = cfg.eps.unwrap_or_else(|| optimal_epsilon(g.n(), k));
            let r = two_phase_report(g, TwoPhaseConfig::new(k, eps)?, seed)?;
            Measured {
                set: r.set,
                metrics: Some(r.metrics),
                node_messages: Some(r.phase_two_msg),
                eps: Some(eps),
                ..Measured::default()
            }
        }
        Algorithm::MsgEfficient => {
            let r = msg_efficient_report(g, k, seed)?;
            Measured {
                set: r.set,
                metrics: Some(r.metrics),
                node_messages: Some(r.msg),
                ..Measured::default()
            }
        }
        Algorithm::StreamBetaRuling => {
            let stream = input.stream.as_ref().expect("streaming input");
            let (set, store) = stream_ruling_set(stream, beta, seed)?;
            Measured {
                set,
                stored_edges: Some(store.stored_edges),
                sampler_count: Some(0),
                ..Measured::default()
            }
        }
        Algorithm::StreamDynamic => {
            let stream = input.stream.as_ref().expect("streaming input");
            let config = DynamicConfig {
                degree_bound: Some(cfg.degree_bound.unwrap_or_else(|| g.max_degree())),
                ..DynamicConfig::default()
            };
            let out = dynamic_stream_ruling_set(stream, beta, &config, seed)?;
            Measured {
                set: out.set,
                stored_edges: Some(out.stored_edges),
                sampler_count: Some(out.sampler_count),
                ..Measured::default()
            }
        }
    })
}

/// Runs every repetition and appends the records to `cfg.out` if set.
pub fn run(cfg: &ExperimentConfig) -> Result<Vec<ResultRecord>> {
    cfg.validate()?;
    let input = load_input(cfg)?;
    let label = cfg.input_label();
    let beta_out = cfg.algorithm.output_beta(cfg.beta);
    let mut sink = match &cfg.out {
        Some(path) => Some(
            OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| Error::io(path, e))?,
        ),
        None => None,
    };

    let mut records = Vec::with_capacity(cfg.reps);
    for rep in 0..cfg.reps {
        let seed = cfg.seed.wrapping_add(rep as u64);
        let start = Instant::now();
        let measured = run_once(cfg, &input, Seed(seed))?;
        let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
        let valid = is_beta_ruling_set(&input.graph, &measured.set, beta_out)?.ok;
        let record = ResultRecord {
            algorithm: cfg.algorithm,
            input: label.clone(),
            n: input.graph.n(),
            m: input.graph.m(),
            k: cfg.k.filter(|_| !cfg.algorithm.is_streaming()),
            beta: Some(beta_out),
            eps: measured.eps,
            seed,
            rep,
            rounds: measured.metrics.map(|m| m.rounds),
            messages: measured.metrics.map(|m| m.total_messages),
            node_messages: measured.node_messages,
            stored_edges: measured.stored_edges,
            sampler_count: measured.sampler_count,
            output_size: measured.set.len(),
            valid,
            wall_time_ms,
            trace: measured.trace,
        };
        if let (Some(file), Some(path)) = (sink.as_mut(), &cfg.out) {
            let line = serde_json::to_string(&record).expect("records serialize");
            writeln!(file, "{line}").map_err(|e| Error::io(path, e))?;
        }
        records.push(record);
    }
    Ok(records)
}

/// Parameter varied by [`sweep`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    K,
    Beta,
    N,
    Eps,
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "k" => Ok(SweepParam::K),
            "beta" => Ok(SweepParam::Beta),
            "n" => Ok(SweepParam::N),
            "eps" => Ok(SweepParam::Eps),
            _ => Err(Error::Config(format!("cannot sweep over {s:?}; expected k, beta, n or eps"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Stat {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl Stat {
    fn of(values: impl IntoIterator<Item = f64>) -> Option<Stat> {
        let v: Vec<f64> = values.into_iter().collect();
        if v.is_empty() {
            return None;
        }
        Some(Stat {
            mean: v.iter().sum::<f64>() / v.len() as f64,
            min: v.iter().copied().fold(f64::INFINITY, f64::min),
            max: v.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        })
    }
}

/// Aggregate over the repetitions at one parameter value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub param: SweepParam,
    pub value: f64,
    pub reps: usize,
    pub all_valid: bool,
    pub rounds: Option<Stat>,
    pub messages: Option<Stat>,
    pub stored_edges: Option<Stat>,
}

fn integral(param: SweepParam, value: f64) -> Result<usize> {
    if value < 0.0 || value.fract() != 0.0 {
        return Err(Error::Config(format!("{param:?} must be a whole number, got {value}")));
    }
    Ok(value as usize)
}

/// Runs `template` once per value of `param` and aggregates each batch.
pub fn sweep(template: &ExperimentConfig, param: SweepParam, values: &[f64]) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(values.len());
    for &value in values {
        let mut cfg = template.clone();
        match param {
            SweepParam::K => cfg.k = Some(integral(param, value)?),
            SweepParam::Beta => cfg.beta = Some(integral(param, value)?),
            SweepParam::Eps => cfg.eps = Some(value),
            SweepParam::N => {
                let n = integral(param, value)?;
                cfg.graph = Some(match &cfg.graph {
                    Some(GraphSource::Gnp { p, .. }) => GraphSource::Gnp { n, p: *p },
                    Some(GraphSource::Gadget { .. }) => GraphSource::Gadget { n },
                    _ => return Err(Error::Config("sweeping n needs a generated graph".into())),
                });
            }
        }
        let records = run(&cfg)?;
        rows.push(SweepRow {
            param,
            value,
            reps: records.len(),
            all_valid: records.iter().all(|r| r.valid),
            rounds: Stat::of(records.iter().filter_map(|r| r.rounds).map(|x| x as f64)),
            messages: Stat::of(records.iter().filter_map(|r| r.messages).map(|x| x as f64)),
            stored_edges: Stat::of(records.iter().filter_map(|r| r.stored_edges).map(|x| x as f64)),
        });
    }
    Ok(rows)
}

#[derive(Serialize)]
struct FlatRow {
    param: SweepParam,
    value: f64,
    reps: usize,
    all_valid: bool,
    rounds_mean: Option<f64>,
    rounds_min: Option<f64>,
    rounds_max: Option<f64>,
    messages_mean: Option<f64>,
    messages_min: Option<f64>,
    messages_max: Option<f64>,
    stored_edges_mean: Option<f64>,
    stored_edges_min: Option<f64>,
    stored_edges_max: Option<f64>,
}

/// Sweep rows as CSV with one `mean/min/max` column triple per metric.
pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(FlatRow {
            param: r.param,
            value: r.value,
            reps: r.reps,
            all_valid: r.all_valid,
            rounds_mean: r.rounds.map(|s| s.mean),
            rounds_min: r.rounds.map(|s| s.min),
            rounds_max: r.rounds.map(|s| s.max),
            messages_mean: r.messages.map(|s| s.mean),
            messages_min: r.messages.map(|s| s.min),
            messages_max: r.messages.map(|s| s.max),
            stored_edges_mean: r.stored_edges.map(|s| s.mean),
            stored_edges_min: r.stored_edges.map(|s| s.min),
            stored_edges_max: r.stored_edges.map(|s| s.max),
        })
        .map_err(|e| Error::Config(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn write_sweep_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    std::fs::write(path, sweep_csv(rows)?).map_err(|e| Error::io(path, e))
}
