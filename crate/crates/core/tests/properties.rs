use proptest::prelude::*;

use symbreak::beeping::{beeping_mis, decisions_to_set, simulate_in_kmachine, MisProgram};
use symbreak::ruling::{beta_ruling_set_kmachine, msg_efficient_two_ruling, two_phase_two_ruling, TwoPhaseConfig};
use symbreak::streaming::{dynamic_stream_ruling_set, stream_ruling_set, DynamicConfig, EdgeStream};
use symbreak::verify::{is_beta_ruling_set, is_mis, multi_source_distances};
use symbreak::{Graph, Seed};

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..40).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..(3 * n)).prop_map(move |pairs| {
            let mut edges: Vec<(usize, usize)> = pairs
                .into_iter()
                .filter(|(u, v)| u != v)
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect();
            edges.sort_unstable();
            edges.dedup();
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn beeping_mis_is_maximal_and_machine_independent(g in graph(), seed in any::<u64>(), k in 2usize..9) {
        let s = beeping_mis(&g, Seed(seed)).unwrap();
        prop_assert!(is_mis(&g, &s).unwrap().ok);
        let run = simulate_in_kmachine(&MisProgram, &g, k, Seed(seed)).unwrap();
        prop_assert_eq!(decisions_to_set(&run.decisions), s);
        prop_assert!(run.metrics.rounds >= run.trace.t());
    }

    #[test]
    fn hierarchical_output_rules_within_beta(g in graph(), seed in any::<u64>(), k in 2usize..9, beta in 1usize..4) {
        let (s, _) = beta_ruling_set_kmachine(&g, beta, k, Seed(seed)).unwrap();
        let v = is_beta_ruling_set(&g, &s, beta).unwrap();
        prop_assert!(v.ok, "{:?}", v.witness);
    }

    #[test]
    fn two_ruling_algorithms_agree_on_validity(g in graph(), seed in any::<u64>(), k in 2usize..9, eps in 0usize..3) {
        let cfg = TwoPhaseConfig::new(k, eps as f64 * 0.5).unwrap();
        let (a, _) = two_phase_two_ruling(&g, cfg, Seed(seed)).unwrap();
        let (b, _, _) = msg_efficient_two_ruling(&g, k, Seed(seed)).unwrap();
        prop_assert!(is_beta_ruling_set(&g, &a, 2).unwrap().ok);
        prop_assert!(is_beta_ruling_set(&g, &b, 2).unwrap().ok);
    }

    #[test]
    fn streaming_ignores_arrival_order_for_validity(g in graph(), order in any::<u64>(), seed in any::<u64>(), beta in 1usize..4) {
        let stream = EdgeStream::insertions(&g, Seed(order));
        let (s, store) = stream_ruling_set(&stream, beta, Seed(seed)).unwrap();
        prop_assert!(is_beta_ruling_set(&g, &s, beta).unwrap().ok);
        prop_assert!(store.stored_edges <= g.m());
    }

    #[test]
    fn dynamic_stream_rules_the_final_graph(g in graph(), seed in any::<u64>(), frac in 0usize..5) {
        let stream = EdgeStream::insert_then_delete(&g, frac as f64 * 0.2, Seed(seed)).unwrap();
        let fin = stream.final_graph();
        let cfg = DynamicConfig { delta: 0.5, degree_bound: Some(fin.max_degree()) };
        let out = dynamic_stream_ruling_set(&stream, 2, &cfg, Seed(seed ^ 1)).unwrap();
        prop_assert!(is_beta_ruling_set(&fin, &out.set, 2).unwrap().ok);
    }

    #[test]
    fn ruling_radius_is_monotone(g in graph(), seed in any::<u64>()) {
        let s = beeping_mis(&g, Seed(seed)).unwrap();
        let far = multi_source_distances(&g, &s).into_iter().flatten().max().unwrap_or(0);
        prop_assert!(far <= 1);
        for beta in 1..4 {
            prop_assert!(is_beta_ruling_set(&g, &s, beta).unwrap().ok);
        }
    }
}
