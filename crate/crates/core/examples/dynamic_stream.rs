//! Insertions followed by deletions, handled with per-vertex L0 sampler
//! banks; the answer is checked on the graph left at the end.

use symbreak::graph::gen_gnp;
use symbreak::streaming::{dynamic_stream_ruling_set, DynamicConfig, EdgeStream};
use symbreak::verify::is_beta_ruling_set;
use symbreak::Seed;

fn main() -> symbreak::Result<()> {
    let g = gen_gnp(500, 0.05, Seed(1))?;
    let stream = EdgeStream::insert_then_delete(&g, 0.3, Seed(2))?;
    let final_graph = stream.final_graph();
    let config = DynamicConfig {
        degree_bound: Some(final_graph.max_degree()),
        ..DynamicConfig::default()
    };
    let out = dynamic_stream_ruling_set(&stream, 2, &config, Seed(3))?;
    println!(
        "{} events, final m={}, samplers={}, decoded edges kept={}, |S|={} valid={}",
        stream.len(),
        final_graph.m(),
        out.sampler_count,
        out.stored_edges,
        out.set.len(),
        is_beta_ruling_set(&final_graph, &out.set, 2)?.ok
    );
    Ok(())
}
