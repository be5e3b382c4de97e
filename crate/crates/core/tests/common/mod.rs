#![allow(dead_code)]

use immunet::components::DirectedOverlay;
use immunet::graph_gen::Multigraph;
use immunet::heuristics::{ConstantHeuristic, Heuristic, TanhHeuristic};
use immunet::simulate::{flood, sample_overlay, BitTape, CoinSource, CoinTape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Multigraph with uniformly random endpoints; loops and parallel edges allowed.
pub fn random_multigraph<R: Rng>(n: usize, m: usize, rng: &mut R) -> Multigraph {
    let edges = (0..m)
        .map(|_| (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32)))
        .map(|(u, v)| (u.min(v), u.max(v)))
        .collect();
    Multigraph::new(n, edges).unwrap()
}

/// Floods from `originator`, then samples the overlay from a copy of the
/// same coins. Returns whether the flood set equals the overlay's forward
/// reach from the originator.
pub fn coupled<C: CoinSource + Clone>(
    graph: &Multigraph,
    heur: &dyn Heuristic,
    originator: usize,
    coins: &C,
) -> bool {
    let flooded = flood(graph, heur, originator, &mut coins.clone()).unwrap();
    let overlay: DirectedOverlay<'_> = sample_overlay(graph, heur, &mut coins.clone());
    flooded == overlay.forward_reach([originator])
}

/// Random graphs with n ≤ 50 under pre-drawn uniform tapes, every originator.
/// Returns (checks, mismatches).
pub fn random_coupling_suite(graphs: usize, seed: u64) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut checks, mut mismatches) = (0, 0);
    for i in 0..graphs {
        let n = rng.gen_range(1..=50);
        let m = rng.gen_range(0..=2 * n);
        let g = random_multigraph(n, m, &mut rng);
        let heur: Box<dyn Heuristic> = match i % 3 {
            0 => Box::new(TanhHeuristic::new(rng.gen_range(0.0..2.0)).unwrap()),
            1 => Box::new(ConstantHeuristic(rng.gen())),
            _ => Box::new(TanhHeuristic::new(1.0).unwrap()),
        };
        let tape = CoinTape::draw(g.edge_count(), &mut rng);
        for u in 0..n {
            checks += 1;
            mismatches += usize::from(!coupled(&g, heur.as_ref(), u, &tape));
        }
    }
    (checks, mismatches)
}

/// Every arc assignment of several small graphs (n ≤ 8), every originator.
pub fn exhaustive_coupling_suite() -> (usize, usize) {
    let graphs = [
        Multigraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap(),
        Multigraph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap(),
        Multigraph::new(4, vec![(0, 1), (0, 1), (1, 2), (2, 2), (2, 3)]).unwrap(),
        Multigraph::new(6, vec![(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap(),
        Multigraph::new(8, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (6, 7)]).unwrap(),
        Multigraph::new(7, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (5, 6)]).unwrap(),
    ];
    let heur = TanhHeuristic::new(1.0).unwrap();
    let (mut checks, mut mismatches) = (0, 0);
    for g in &graphs {
        let m = g.edge_count();
        for code in 0u32..(1 << (2 * m)) {
            let tape = BitTape {
                bits: (0..m).map(|e| ((code >> (2 * e)) & 3) as u8).collect(),
            };
            for u in 0..g.node_count() {
                checks += 1;
                mismatches += usize::from(!coupled(g, &heur, u, &tape));
            }
        }
    }
    (checks, mismatches)
}
