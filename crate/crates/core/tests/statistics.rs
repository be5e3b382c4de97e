use immunet::degree_dist::DegreePmf;
use immunet::graph_gen::{configuration_model, DegreeSequence};
use immunet::heuristics::ConstantHeuristic;
use immunet::simulate::{run_experiment_with, ExperimentConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generous chi-square cutoff: mean plus six standard deviations.
fn chi_square_cutoff(df: usize) -> f64 {
    df as f64 + 6.0 * (2.0 * df as f64).sqrt()
}

#[test]
fn inverse_cdf_sampling_matches_the_pmf() {
    let pmf = DegreePmf::power_law(2.5, 100).unwrap();
    let draws = 1_000_000usize;
    let mut counts = vec![0usize; pmf.dmax() + 1];
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..draws {
        counts[pmf.sample(&mut rng)] += 1;
    }
    assert_eq!(counts[0], 0);

    let p1 = pmf.prob(1);
    assert!((p1 - 0.745_809_166_053_836_8).abs() < 1e-12);
    let se = (p1 * (1.0 - p1) / draws as f64).sqrt();
    let observed = counts[1] as f64 / draws as f64;
    assert!(
        (observed - p1).abs() < 3.0 * se,
        "p1 {observed} vs {p1} (se {se})"
    );

    // pool the tail so every bin expects at least 20 draws
    let mut chi2 = 0.0;
    let mut bins = 0;
    let (mut pooled_obs, mut pooled_exp) = (0.0, 0.0);
    for (a, &c) in counts.iter().enumerate().skip(1) {
        pooled_obs += c as f64;
        pooled_exp += pmf.prob(a) * draws as f64;
        if pooled_exp >= 20.0 || a == pmf.dmax() {
            chi2 += (pooled_obs - pooled_exp).powi(2) / pooled_exp;
            bins += 1;
            pooled_obs = 0.0;
            pooled_exp = 0.0;
        }
    }
    assert!(
        chi2 < chi_square_cutoff(bins - 1),
        "chi2 {chi2} over {bins} bins"
    );
}

#[test]
fn stub_matching_is_uniform() {
    // four degree-1 nodes: three perfect matchings, each with probability 1/3
    let seq = DegreeSequence::new(vec![1, 1, 1, 1]).unwrap();
    let runs = 100_000u64;
    let mut counts = [0usize; 3];
    for seed in 0..runs {
        let g = configuration_model(&seq, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let partner = g.edges().iter().find(|e| e.0 == 0).unwrap().1;
        counts[partner as usize - 1] += 1;
    }
    let expected = runs as f64 / 3.0;
    let chi2: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    // 0.1% critical value for two degrees of freedom
    assert!(chi2 < 13.82, "counts {counts:?}");
}

#[test]
fn inert_heuristic_reaches_only_the_originator() {
    let cfg = ExperimentConfig {
        n: 400,
        tau_values: vec![2.2],
        alpha_values: vec![1.0],
        num_graphs: 1,
        trials_per_graph: 20,
        overlay_samples_per_graph: 5,
        master_seed: 5,
        analytic: false,
        ..Default::default()
    };
    let summary = run_experiment_with(&cfg, |_| Ok(ConstantHeuristic(0.0))).unwrap();
    let sim = summary.cells[0].simulation.as_ref().unwrap();
    let one_node = 1.0 / sim.mean_gcc_size;
    assert!((sim.spread.mean - one_node).abs() < 1e-15);
    assert!(sim.spread.se < 1e-15);
    assert!((sim.gin_gcc.mean - one_node).abs() < 1e-15);
    assert_eq!(sim.originator_in_gin.mean, 0.0);
}
