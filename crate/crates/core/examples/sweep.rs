//! Round counts of the k-machine MIS as k varies, as CSV.

use symbreak::experiment::{sweep, sweep_csv, Algorithm, ExperimentConfig, GraphSource, SweepParam};

fn main() -> symbreak::Result<()> {
    let mut cfg = ExperimentConfig::new(Algorithm::MisKmachine, GraphSource::Gnp { n: 1000, p: 0.04 });
    cfg.seed = 1;
    cfg.reps = 5;
    let rows = sweep(&cfg, SweepParam::K, &[5.0, 10.0, 20.0])?;
    print!("{}", sweep_csv(&rows)?);
    Ok(())
}
