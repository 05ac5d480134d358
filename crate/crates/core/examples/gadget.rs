//! The 14-node gadget: its edges and every maximal independent set.

use symbreak::graph::{gen_gadget, gen_lower_bound_graph, valid_vectors, GadgetVector};
use symbreak::verify::{brute_force_all_mis, is_beta_ruling_set};
use symbreak::Seed;

fn main() -> symbreak::Result<()> {
    println!("{} valid vectors", valid_vectors().len());
    let x: GadgetVector = "2134567".parse()?;
    let y: GadgetVector = "3214567".parse()?;
    let g = gen_gadget(&x, &y)?;
    println!("gadget edges: {:?}", g.edges().collect::<Vec<_>>());
    let all = brute_force_all_mis(&g)?;
    let ok = all.iter().filter(|s| is_beta_ruling_set(&g, s, 1).map(|v| v.ok).unwrap_or(false)).count();
    println!("{} maximal independent sets, {ok} verified", all.len());
    let big = gen_lower_bound_graph(1400, Seed(1))?;
    println!("lower-bound graph: n={} m={}", big.n(), big.m());
    Ok(())
}
