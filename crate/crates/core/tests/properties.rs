use std::path::Path;

use immunet::components::{
    in_out_components, strongly_connected_components, undirected_components, DirectedOverlay,
};
use immunet::degree_dist::{DegreePmf, NORMALIZATION_TOLERANCE};
use immunet::graph_gen::{configuration_model, DegreeSequence, Multigraph};
use immunet::heuristics::{Heuristic, TanhHeuristic};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn edges_strategy(max_n: usize, max_m: usize) -> impl Strategy<Value = Multigraph> {
    (1..max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n as u32, 0..n as u32), 0..max_m).prop_map(move |raw| {
            let edges = raw.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
            Multigraph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pmf_is_normalized(weights in prop::collection::vec(0.0f64..10.0, 2..200)) {
        prop_assume!(weights[1..].iter().any(|&w| w > 0.0));
        let pmf = DegreePmf::from_weights(weights).unwrap();
        let total: f64 = pmf.probs().iter().sum();
        prop_assert!((total - 1.0).abs() <= NORMALIZATION_TOLERANCE);
        prop_assert!(pmf.cdf().windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(*pmf.cdf().last().unwrap(), 1.0);
    }

    #[test]
    fn power_law_text_round_trip(tau in 1.5f64..3.5, dmax in 2usize..300) {
        let pmf = DegreePmf::power_law(tau, dmax).unwrap();
        prop_assert_eq!(pmf.prob(0), 0.0);
        let back = DegreePmf::parse(pmf.to_text().as_bytes(), Path::new("mem")).unwrap();
        prop_assert_eq!(back.probs(), pmf.probs());
    }

    #[test]
    fn configuration_model_keeps_degrees(
        mut degrees in prop::collection::vec(0u32..12, 1..80),
        seed in any::<u64>(),
    ) {
        if degrees.iter().map(|&d| u64::from(d)).sum::<u64>() % 2 == 1 {
            degrees[0] += 1;
        }
        let seq = DegreeSequence::new(degrees.clone()).unwrap();
        let g = configuration_model(&seq, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!(g.degrees(), &degrees[..]);
        prop_assert_eq!(g.edge_count() as u64 * 2, seq.total());
        prop_assert!(g.edges().iter().all(|&(u, v)| u <= v));
    }

    #[test]
    fn edge_list_round_trip(g in edges_strategy(40, 80)) {
        let back = Multigraph::parse_edge_list(g.to_edge_list().as_bytes(), Path::new("mem")).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.node_count(), g.node_count());
    }

    #[test]
    fn heuristic_range_and_monotonicity(alpha in 0.0f64..3.0, a in 0u32..500, b in 0u32..500) {
        let h = TanhHeuristic::new(alpha).unwrap();
        let p = h.prob(a, b);
        prop_assert!((0.0..=1.0).contains(&p));
        // more eager towards better-connected receivers
        prop_assert!(h.prob(a, b + 1) >= p);
        // less eager from better-connected senders, once the power kicks in
        if a >= 3 && b >= 2 {
            prop_assert!(h.prob(a + 1, b) <= p);
        }
        let steeper = TanhHeuristic::new(alpha + 0.5).unwrap();
        prop_assert!(steeper.prob(a, b) <= p);
    }

    #[test]
    fn full_overlay_scc_equals_components(g in edges_strategy(60, 100)) {
        let full = DirectedOverlay::full(&g);
        prop_assert_eq!(strongly_connected_components(&full), undirected_components(&g, None));
    }

    #[test]
    fn reversal_swaps_in_and_out(g in edges_strategy(40, 80), bits_seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(bits_seed);
        let overlay = DirectedOverlay::from_fn(&g, |_, _| rng.gen_bool(0.6));
        let core = strongly_connected_components(&overlay).largest_members();
        let (ins, outs) = in_out_components(&overlay, &core).unwrap();
        let rev = overlay.reversed();
        prop_assert_eq!(strongly_connected_components(&rev).largest_members(), core.clone());
        let (rins, routs) = in_out_components(&rev, &core).unwrap();
        prop_assert_eq!(rins, outs.clone());
        prop_assert_eq!(routs, ins.clone());
        prop_assert!(core.is_subset(&ins) && core.is_subset(&outs));
    }
}
