//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Takes several minutes on one core.

mod common;

use std::time::Instant;

use immunet::analytic::{analyze, solve_gcc, AnalyticReport, FixedPointConfig};
use immunet::degree_dist::DegreePmf;
use immunet::heuristics::TanhHeuristic;
use immunet::simulate::{run_experiment, CellSummary, ExperimentConfig, ExperimentSummary};

struct Verdict {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn cell(summary: &ExperimentSummary, tau: f64, alpha: f64) -> &CellSummary {
    summary
        .cells
        .iter()
        .find(|c| c.tau == tau && c.alpha == alpha)
        .expect("cell present")
}

fn sim_experiment() -> ExperimentSummary {
    let cfg = ExperimentConfig {
        n: 10_000,
        tau_values: vec![2.1, 2.3, 2.5],
        alpha_values: vec![0.4, 1.0],
        num_graphs: 20,
        trials_per_graph: 200,
        overlay_samples_per_graph: 200,
        master_seed: 20_240_601,
        ..Default::default()
    };
    run_experiment(&cfg).expect("experiment runs")
}

fn giant_in_component(s: &ExperimentSummary) -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for tau in [2.1, 2.3, 2.5] {
        let c = cell(s, tau, 1.0);
        match &c.simulation {
            Some(sim) => {
                pass &= sim.gin_gcc.mean > 0.97 && sim.gout_gcc.mean < 0.13;
                parts.push(format!(
                    "tau={tau}: gin/gcc={:.4} gout/gcc={:.4}",
                    sim.gin_gcc.mean, sim.gout_gcc.mean
                ));
            }
            None => {
                pass = false;
                parts.push(format!("tau={tau}: failed ({:?})", c.error));
            }
        }
    }
    Verdict {
        id: 1,
        name: "giant in-component",
        pass,
        detail: parts.join("; "),
    }
}

fn near_zero_vulnerability(s: &ExperimentSummary) -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for tau in [2.1, 2.3, 2.5] {
        let v = cell(s, tau, 1.0)
            .simulation
            .as_ref()
            .map(|x| x.vulnerability.mean);
        pass &= v.is_some_and(|v| v < 0.05);
        parts.push(format!("tau={tau}: {v:.4?}"));
    }
    Verdict {
        id: 2,
        name: "near-zero vulnerability",
        pass,
        detail: parts.join("; "),
    }
}

fn ten_percent_spread(s: &ExperimentSummary) -> Verdict {
    let spread = cell(s, 2.1, 1.0).simulation.as_ref().map(|x| x.spread.mean);
    Verdict {
        id: 3,
        name: "about ten percent immunized",
        pass: spread.is_some_and(|p| (0.05..=0.15).contains(&p)),
        detail: format!("tau=2.1 alpha=1: spread={spread:.4?}"),
    }
}

fn analytic_agreement(s: &ExperimentSummary) -> Verdict {
    let mut pass = true;
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for tau in [2.1, 2.5] {
        for alpha in [0.4, 1.0] {
            let c = cell(s, tau, alpha);
            let (Some(sim), Some(ana)) = (&c.simulation, &c.analytic) else {
                pass = false;
                parts.push(format!(
                    "tau={tau} alpha={alpha}: missing ({:?} {:?})",
                    c.error, c.analytic_error
                ));
                continue;
            };
            let gaps = [
                (ana.gin_gcc - sim.gin_gcc.mean).abs(),
                (ana.gout_gcc - sim.gout_gcc.mean).abs(),
                (ana.spread - sim.spread.mean).abs(),
            ];
            let gap = gaps.iter().copied().fold(0.0, f64::max);
            worst = worst.max(gap);
            let vuln_ok = ana.vulnerability <= sim.vulnerability.mean + 0.05;
            pass &= gap <= 0.05 && vuln_ok;
            parts.push(format!(
                "tau={tau} alpha={alpha}: max gap {gap:.4}, vuln ana {:.4} sim {:.4}",
                ana.vulnerability, sim.vulnerability.mean
            ));
        }
    }
    Verdict {
        id: 4,
        name: "analytic vs simulation",
        pass,
        detail: format!("worst gap {worst:.4}; {}", parts.join("; ")),
    }
}

fn solver_oracle() -> Verdict {
    let cfg = FixedPointConfig::default();
    // classical giant component of a Poisson(2) graph, computed independently to 40 digits
    let poisson = solve_gcc(&DegreePmf::poisson(2.0, 60).unwrap(), &cfg).unwrap();
    let regular = solve_gcc(&DegreePmf::point_mass(3), &cfg).unwrap();
    let pass = (poisson.gcc - 0.796_812_130_020_02).abs() <= 1e-3
        && regular.q.abs() <= cfg.tolerance
        && (regular.gcc - 1.0).abs() <= cfg.tolerance;
    Verdict {
        id: 5,
        name: "solver oracle",
        pass,
        detail: format!(
            "poisson(2) gcc={:.10}; 3-regular q={} gcc={}",
            poisson.gcc, regular.q, regular.gcc
        ),
    }
}

fn coupling() -> Verdict {
    let (c1, m1) = common::random_coupling_suite(100, 7);
    let (c2, m2) = common::exhaustive_coupling_suite();
    Verdict {
        id: 6,
        name: "flood/overlay coupling",
        pass: m1 + m2 == 0,
        detail: format!("random: {m1}/{c1} mismatches; exhaustive: {m2}/{c2} mismatches"),
    }
}

fn fixed_point_invariants(reports: &[(String, AnalyticReport)]) -> Verdict {
    let mut failures = Vec::new();
    for (label, r) in reports {
        if let Err(e) = r.check_invariants() {
            failures.push(format!("{label}: {e}"));
        }
        let d = &r.diagnostics;
        for (stage, s) in [
            ("gcc", d.gcc),
            ("gin", d.gin),
            ("gout", d.gout),
            ("gcc_v", d.gcc_v),
        ] {
            if s.residual > r.tolerance {
                failures.push(format!("{label} {stage}: residual {:e}", s.residual));
            }
            if s.max_decrease > 0.0 {
                failures.push(format!(
                    "{label} {stage}: iterate decreased by {:e}",
                    s.max_decrease
                ));
            }
        }
    }
    Verdict {
        id: 7,
        name: "fixed-point invariants",
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{} reports checked", reports.len())
        } else {
            failures.join("; ")
        },
    }
}

fn alpha_trend(trend: &[(f64, AnalyticReport)]) -> Verdict {
    let ps: Vec<f64> = trend.iter().map(|(_, r)| r.spread).collect();
    let pv: Vec<f64> = trend.iter().map(|(_, r)| r.vulnerability).collect();
    let pass = ps.windows(2).all(|w| w[1] < w[0]) && pv.windows(2).all(|w| w[1] >= w[0]);
    Verdict {
        id: 8,
        name: "alpha trade-off",
        pass,
        detail: format!("spread {ps:.4?}; vulnerability {pv:.5?}"),
    }
}

fn determinism() -> Verdict {
    let cfg = ExperimentConfig {
        n: 2000,
        tau_values: vec![2.1, 2.5],
        alpha_values: vec![0.4, 1.0],
        num_graphs: 4,
        trials_per_graph: 30,
        overlay_samples_per_graph: 30,
        master_seed: 99,
        threads: Some(2),
        analytic: false,
        ..Default::default()
    };
    let a = run_experiment(&cfg).unwrap().to_csv();
    let b = run_experiment(&cfg).unwrap().to_csv();
    let one_thread = run_experiment(&ExperimentConfig {
        threads: Some(1),
        ..cfg.clone()
    })
    .unwrap()
    .to_csv();
    Verdict {
        id: 9,
        name: "determinism",
        pass: a == b && a == one_thread,
        detail: format!(
            "{} bytes; rerun identical: {}; 1 vs 2 threads identical: {}",
            a.len(),
            a == b,
            a == one_thread
        ),
    }
}

fn main() {
    let started = Instant::now();
    let mut verdicts = Vec::new();

    verdicts.push(solver_oracle());
    verdicts.push(coupling());

    let cfg = FixedPointConfig::default();
    let mut reports: Vec<(String, AnalyticReport)> = Vec::new();
    let mut trend = Vec::new();
    for alpha in [0.1, 0.4, 0.7, 1.0] {
        let pmf = DegreePmf::power_law(2.1, 9999).unwrap();
        let r =
            analyze(&pmf, &TanhHeuristic::new(alpha).unwrap(), &cfg).expect("analysis converges");
        reports.push((format!("tau=2.1 alpha={alpha} dmax=9999"), r.clone()));
        trend.push((alpha, r));
    }
    for tau in [2.3, 2.5, 2.8, 3.0] {
        for alpha in [0.1, 1.0] {
            let pmf = DegreePmf::power_law(tau, 2000).unwrap();
            let r = analyze(&pmf, &TanhHeuristic::new(alpha).unwrap(), &cfg)
                .expect("analysis converges");
            reports.push((format!("tau={tau} alpha={alpha} dmax=2000"), r));
        }
    }
    let r = analyze(
        &DegreePmf::poisson(3.0, 60).unwrap(),
        &TanhHeuristic::new(1.0).unwrap(),
        &cfg,
    )
    .unwrap();
    reports.push(("poisson(3)".into(), r));

    let summary = sim_experiment();
    verdicts.push(giant_in_component(&summary));
    verdicts.push(near_zero_vulnerability(&summary));
    verdicts.push(ten_percent_spread(&summary));
    verdicts.push(analytic_agreement(&summary));
    verdicts.push(fixed_point_invariants(&reports));
    verdicts.push(alpha_trend(&trend));
    verdicts.push(determinism());

    verdicts.sort_by_key(|v| v.id);
    for v in &verdicts {
        println!(
            "criterion {} {} {}: {}",
            v.id,
            if v.pass { "PASS" } else { "FAIL" },
            v.name,
            v.detail
        );
    }
    let failed = verdicts.iter().filter(|v| !v.pass).count();
    println!(
        "acceptance: {}/{} passed in {:.0}s",
        verdicts.len() - failed,
        verdicts.len(),
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
