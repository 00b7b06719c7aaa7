//! Property tests for the structural invariants the modules promise.

use degreebound::detect::{
    count_induced_copies, find_biclique, find_induced, Budget,
};
use degreebound::exact::{rat, rat_usize, Rat};
use degreebound::graph::{graph6, max_average_degree, named, random, Graph, VertexSet};
use degreebound::oracle::canonical_form;
use degreebound::pipeline::{extract_girth5, PipelineParams};
use degreebound::rng::SplitMix64;
use num_traits::One;
use proptest::prelude::*;

fn arbitrary_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0u64..1_000_000, 5u32..95).prop_map(|(n, seed, percent)| {
        let mut rng = SplitMix64::new(seed);
        random::gnp(n, percent as f64 / 100.0, &mut rng)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn average_degree_sandwich(g in arbitrary_graph(12)) {
        let avg = g.average_degree().unwrap();
        let (mad, witness_set) = max_average_degree(&g).unwrap();
        let (_, degeneracy) = g.degeneracy();
        prop_assert!(avg <= mad);
        prop_assert!(mad <= rat(2, 1) * rat_usize(degeneracy));
        // The reported set really achieves the maximum.
        prop_assert_eq!(g.average_degree_of(&witness_set).unwrap(), mad);
    }

    #[test]
    fn mad_monotone_under_induced_subgraphs(g in arbitrary_graph(10), subset_seed in 0u64..1000) {
        let n = g.vertex_count();
        let mut rng = SplitMix64::new(subset_seed);
        let keep: VertexSet = (0..n).filter(|_| rng.next_bool(0.6)).collect();
        prop_assume!(!keep.is_empty());
        let (sub, _) = g.induced(&keep);
        let (mad_sub, _) = max_average_degree(&sub).unwrap();
        let (mad_full, _) = max_average_degree(&g).unwrap();
        prop_assert!(mad_sub <= mad_full);
    }

    #[test]
    fn orientation_out_degree_bound(g in arbitrary_graph(14)) {
        let (_, degeneracy) = g.degeneracy();
        let orientation = g.degenerate_orientation(degeneracy).unwrap();
        prop_assert!(orientation.matches(&g));
        for v in g.vertices() {
            prop_assert!(orientation.out_degree(v) <= degeneracy);
        }
    }

    #[test]
    fn greedy_independent_set_meets_bound(g in arbitrary_graph(14)) {
        let set = g.greedy_independent_set();
        prop_assert!(set.is_independent_in(&g));
        // |S| >= n / (d(G) + 1), exactly.
        let avg = g.average_degree().unwrap();
        let bound = rat_usize(g.vertex_count()) / (avg + Rat::one());
        prop_assert!(rat_usize(set.len()) >= bound);
    }

    #[test]
    fn graph6_roundtrip(g in arbitrary_graph(70)) {
        let text = graph6::encode(&g);
        prop_assert_eq!(graph6::decode(&text).unwrap(), g);
    }

    #[test]
    fn canonical_form_invariant_under_relabeling(g in arbitrary_graph(8), perm_seed in 0u64..1000) {
        let n = g.vertex_count();
        let mut rng = SplitMix64::new(perm_seed);
        let perm = rng.sample_distinct(n, n);
        let edges: Vec<(usize, usize)> = g.edges().into_iter()
            .map(|(u, v)| (perm[u], perm[v]))
            .collect();
        let relabeled = Graph::from_edges(n, &edges).unwrap();
        prop_assert_eq!(canonical_form(&g), canonical_form(&relabeled));
    }

    #[test]
    fn detector_witnesses_always_verify(g in arbitrary_graph(9)) {
        for h in [named::path(3), named::cycle(4), named::complete(3)] {
            let count = count_induced_copies(&g, &h);
            match find_induced(&g, &h, &Budget::unlimited()) {
                degreebound::detect::SearchOutcome::Found(w) => {
                    prop_assert!(w.verify());
                    prop_assert!(count > 0);
                }
                degreebound::detect::SearchOutcome::Exhausted => prop_assert_eq!(count, 0),
                degreebound::detect::SearchOutcome::TimedOut => unreachable!(),
            }
        }
        if let degreebound::detect::SearchOutcome::Found(w) =
            find_biclique(&g, 2, 2, &Budget::unlimited())
        {
            prop_assert!(w.verify());
        }
    }

    #[test]
    fn girth5_certificates_serialize_deterministically(seed in 0u64..500) {
        let mut rng = SplitMix64::new(seed);
        let g = random::gnp(18, 0.25, &mut rng);
        let mut params = PipelineParams::desk(seed);
        params.max_retries = 4;
        params.desk.girth5_probability = Some(0.6);
        params.desk.girth5_target = Some(rat(0, 1));
        let delta = rat_usize(g.max_degree().max(1));
        let a = extract_girth5(&g, 2, &delta, &params);
        let b = extract_girth5(&g, 2, &delta, &params);
        match (a, b) {
            (Ok(ca), Ok(cb)) => {
                prop_assert_eq!(
                    serde_json::to_string(&ca.to_json()).unwrap(),
                    serde_json::to_string(&cb.to_json()).unwrap()
                );
            }
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "determinism break: one run failed"),
        }
    }
}
