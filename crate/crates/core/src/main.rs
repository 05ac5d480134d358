use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use symbreak::experiment::{run, sweep, write_sweep_csv, Algorithm, ExperimentConfig, GraphSource, SweepParam};
use symbreak::Error;

/// Run MIS and ruling-set algorithms on a graph or edge stream and print one
/// JSON record per repetition.
///
/// Exit codes: 0 success, 2 bad parameters, 3 unreadable input, 4 an output
/// failed verification, 1 any other runtime failure.
#[derive(Parser, Debug)]
#[command(name = "symbreak", version)]
struct Cli {
    /// mis-kmachine, beta-ruling, two-phase, msg-efficient,
    /// stream-beta-ruling or stream-dynamic.
    algorithm: String,

    /// Edge-list file.
    #[arg(long, value_name = "FILE", group = "input")]
    graph: Option<PathBuf>,

    /// Random graph G(N, P).
    #[arg(long, num_args = 2, value_names = ["N", "P"], group = "input")]
    gnp: Option<Vec<String>>,

    /// Lower-bound gadget graph on N vertices.
    #[arg(long, value_name = "N", group = "input")]
    gadget: Option<usize>,

    /// Edge-event file for the streaming algorithms.
    #[arg(long, value_name = "FILE", group = "input")]
    stream: Option<PathBuf>,

    #[arg(long)]
    k: Option<usize>,

    #[arg(long)]
    beta: Option<usize>,

    #[arg(long)]
    eps: Option<f64>,

    /// Base seed; repetition r uses seed + r. SYMBREAK_SEED overrides it.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long, default_value_t = 1)]
    reps: usize,

    /// Append records to this JSON-lines file instead of printing them.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Include the per-round beeping trace in MIS records.
    #[arg(long)]
    trace: bool,

    /// Degree promise for stream-dynamic sampler banks.
    #[arg(long)]
    degree_bound: Option<usize>,

    /// Fraction of edges deleted when stream-dynamic builds its stream from
    /// a graph.
    #[arg(long, default_value_t = 0.2)]
    deletions: f64,

    /// Sweep one parameter: k, beta, n or eps.
    #[arg(long, value_name = "PARAM", requires = "values")]
    vary: Option<String>,

    /// Comma-separated values for --vary.
    #[arg(long, value_delimiter = ',', requires = "vary")]
    values: Option<Vec<f64>>,

    /// Write sweep aggregates as CSV here (JSON rows go to stdout).
    #[arg(long, value_name = "PATH", requires = "vary")]
    csv: Option<PathBuf>,
}

fn config(cli: &Cli) -> Result<ExperimentConfig, Error> {
    let algorithm: Algorithm = cli.algorithm.parse()?;
    let graph = if let Some(path) = &cli.graph {
        Some(GraphSource::File(path.clone()))
    } else if let Some(v) = &cli.gnp {
        let n = v[0].parse().map_err(|_| Error::Config(format!("--gnp N: bad value {:?}", v[0])))?;
        let p = v[1].parse().map_err(|_| Error::Config(format!("--gnp P: bad value {:?}", v[1])))?;
        Some(GraphSource::Gnp { n, p })
    } else {
        cli.gadget.map(|n| GraphSource::Gadget { n })
    };
    let seed = match std::env::var("SYMBREAK_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("SYMBREAK_SEED: bad value {v:?}")))?,
        Err(_) => cli.seed,
    };
    Ok(ExperimentConfig {
        algorithm,
        graph,
        stream: cli.stream.clone(),
        k: cli.k,
        beta: cli.beta,
        eps: cli.eps,
        seed,
        reps: cli.reps,
        out: cli.out.clone(),
        trace: cli.trace,
        degree_bound: cli.degree_bound,
        deletions: cli.deletions,
    })
}

fn execute(cli: &Cli) -> Result<bool, Error> {
    let cfg = config(cli)?;
    if let (Some(param), Some(values)) = (&cli.vary, &cli.values) {
        let param: SweepParam = param.parse()?;
        let rows = sweep(&cfg, param, values)?;
        for row in &rows {
            println!("{}", serde_json::to_string(row).expect("rows serialize"));
        }
        if let Some(path) = &cli.csv {
            write_sweep_csv(&rows, path)?;
        }
        return Ok(rows.iter().all(|r| r.all_valid));
    }
    let records = run(&cfg)?;
    if cfg.out.is_none() {
        for r in &records {
            println!("{}", serde_json::to_string(r).expect("records serialize"));
        }
    }
    Ok(records.iter().all(|r| r.valid))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("symbreak: an output failed verification");
            ExitCode::from(4)
        }
        Err(e) => {
            eprintln!("symbreak: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
