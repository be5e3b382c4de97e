//! Monte Carlo side: directed overlay sampling, heuristic flooding,
//! vulnerability probes, and the parameter-sweep experiment driver.
//!
//! Randomness for arcs goes through [`CoinSource`], keyed by edge and
//! direction, so the same coin outcomes can drive both a flood and a full
//! overlay sample.

use std::collections::VecDeque;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{analyze_with_table, FixedPointConfig, HeuristicTable, SolveDiagnostics};
use crate::components::{
    component_containing, in_out_components, strongly_connected_components, undirected_components,
    DirectedOverlay, NodeSet,
};
use crate::degree_dist::DegreePmf;
use crate::error::{Error, Result};
use crate::graph_gen::{generate, Multigraph};
use crate::heuristics::{Heuristic, TanhHeuristic};

/// Decides whether the arc along `edge` in the given direction fires.
/// `forward` means from the edge's first endpoint to its second.
pub trait CoinSource {
    fn flip(&mut self, edge: usize, forward: bool, p: f64) -> bool;
}

/// Fresh uniform per call. Certain outcomes (`p ≤ 0`, `p ≥ 1`) consume no
/// randomness.
pub struct RngCoins<'r, R: Rng + ?Sized>(pub &'r mut R);

impl<R: Rng + ?Sized> CoinSource for RngCoins<'_, R> {
    fn flip(&mut self, _edge: usize, _forward: bool, p: f64) -> bool {
        if p <= 0.0 {
            false
        } else if p >= 1.0 {
            true
        } else {
            self.0.gen::<f64>() < p
        }
    }
}

/// Pre-drawn uniforms, one per arc: the arc fires when its uniform is below `p`.
#[derive(Debug, Clone)]
pub struct CoinTape {
    uniforms: Vec<[f64; 2]>,
}

impl CoinTape {
    pub fn draw<R: Rng + ?Sized>(edges: usize, rng: &mut R) -> Self {
        Self {
            uniforms: (0..edges).map(|_| [rng.gen(), rng.gen()]).collect(),
        }
    }
}

impl CoinSource for CoinTape {
    fn flip(&mut self, edge: usize, forward: bool, p: f64) -> bool {
        self.uniforms[edge][usize::from(!forward)] < p
    }
}

/// Forced outcomes that ignore `p`: bit 0 of `bits[e]` is the forward arc,
/// bit 1 the backward arc.
#[derive(Debug, Clone)]
pub struct BitTape {
    pub bits: Vec<u8>,
}

impl CoinSource for BitTape {
    fn flip(&mut self, edge: usize, forward: bool, _p: f64) -> bool {
        self.bits[edge] & if forward { 1 } else { 2 } != 0
    }
}

/// Draws each arc's uniform the first time it is asked for and replays it
/// afterwards, so a flood can later be completed into the overlay it lives in.
pub struct LazyTape<'r, R: Rng + ?Sized> {
    rng: &'r mut R,
    uniforms: Vec<[f64; 2]>,
}

impl<'r, R: Rng + ?Sized> LazyTape<'r, R> {
    pub fn new(edges: usize, rng: &'r mut R) -> Self {
        Self {
            rng,
            uniforms: vec![[f64::NAN; 2]; edges],
        }
    }
}

impl<R: Rng + ?Sized> CoinSource for LazyTape<'_, R> {
    fn flip(&mut self, edge: usize, forward: bool, p: f64) -> bool {
        let slot = &mut self.uniforms[edge][usize::from(!forward)];
        if slot.is_nan() {
            *slot = self.rng.gen();
        }
        *slot < p
    }
}

/// Each non-loop edge copy `{u, v}` gets arc `u → v` with probability
/// `h(deg u, deg v)` and arc `v → u` with probability `h(deg v, deg u)`.
pub fn sample_overlay<'g>(
    graph: &'g Multigraph,
    heur: &dyn Heuristic,
    coins: &mut dyn CoinSource,
) -> DirectedOverlay<'g> {
    let edges = graph.edges();
    DirectedOverlay::from_fn(graph, |e, forward| {
        let (u, v) = edges[e];
        let (from, to) = if forward { (u, v) } else { (v, u) };
        let p = heur.prob(graph.degree(from as usize), graph.degree(to as usize));
        coins.flip(e, forward, p)
    })
}

/// Breadth-first heuristic flooding from `originator`. Every node, on first
/// receipt, flips one coin per incident non-loop edge copy; later receipts
/// are ignored. Returns every node that received the vaccine.
pub fn flood(
    graph: &Multigraph,
    heur: &dyn Heuristic,
    originator: usize,
    coins: &mut dyn CoinSource,
) -> Result<NodeSet> {
    let n = graph.node_count();
    if originator >= n {
        return Err(Error::invalid(format!(
            "originator {originator} outside 0..{n}"
        )));
    }
    let mut informed = NodeSet::empty(n);
    informed.insert(originator);
    let mut queue = VecDeque::from([originator]);
    while let Some(u) = queue.pop_front() {
        let du = graph.degree(u);
        for inc in graph.incidences(u) {
            let v = inc.neighbor as usize;
            let p = heur.prob(du, graph.degree(v));
            if coins.flip(inc.edge as usize, inc.outgoing_is_forward, p) && informed.insert(v) {
                queue.push_back(v);
            }
        }
    }
    Ok(informed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OverlayStats {
    pub gscc_size: usize,
    pub gin_size: usize,
    pub gout_size: usize,
    pub gcc_size: usize,
}

/// Sizes of the overlay's largest SCC, the in- and out-sets around it, and
/// the base graph's largest component.
pub fn overlay_stats(graph: &Multigraph, overlay: &DirectedOverlay<'_>) -> OverlayStats {
    let gcc_size = undirected_components(graph, None).largest_size();
    overlay_stats_with_gcc(overlay, gcc_size)
}

fn overlay_stats_with_gcc(overlay: &DirectedOverlay<'_>, gcc_size: usize) -> OverlayStats {
    let scc = strongly_connected_components(overlay);
    let core = scc.largest_members();
    if core.is_empty() {
        return OverlayStats {
            gscc_size: 0,
            gin_size: 0,
            gout_size: 0,
            gcc_size,
        };
    }
    let (ins, outs) = in_out_components(overlay, &core).expect("core is non-empty");
    OverlayStats {
        gscc_size: core.len(),
        gin_size: ins.len(),
        gout_size: outs.len(),
        gcc_size,
    }
}

/// Fraction of `gcc_nodes` an infection starting at `target` reaches while
/// avoiding immunized nodes.
pub fn measure_vulnerability(
    graph: &Multigraph,
    gcc_nodes: &NodeSet,
    immunized: &NodeSet,
    target: usize,
) -> Result<f64> {
    if !gcc_nodes.contains(target) {
        return Err(Error::invalid(format!(
            "target {target} is not in the giant component"
        )));
    }
    if immunized.contains(target) {
        return Ok(0.0);
    }
    let keep = |u: usize| gcc_nodes.contains(u) && !immunized.contains(u);
    let infected = component_containing(graph, target, &keep);
    Ok(infected.len() as f64 / gcc_nodes.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub spread_fraction: f64,
    pub vulnerability_fraction: f64,
    pub originator_in_gin: bool,
}

/// Largest component of a graph, as a mask and as a list for sampling.
pub struct GiantComponent {
    pub nodes: NodeSet,
    pub list: Vec<u32>,
}

impl GiantComponent {
    pub fn of(graph: &Multigraph) -> Self {
        let nodes = undirected_components(graph, None).largest_members();
        let list = nodes.iter().map(|u| u as u32).collect();
        Self { nodes, list }
    }

    pub fn size(&self) -> usize {
        self.list.len()
    }

    fn pick<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.list[rng.gen_range(0..self.list.len())] as usize
    }
}

/// One dissemination from a uniform originator in the giant component,
/// followed by one infection attempt at a fresh uniform target.
///
/// The flood's coins are kept and the rest of the overlay is drawn
/// afterwards, so `originator_in_gin` refers to the overlay the flood
/// actually ran in.
pub fn run_trial<R: Rng + ?Sized>(
    graph: &Multigraph,
    heur: &dyn Heuristic,
    gcc: &GiantComponent,
    rng: &mut R,
) -> Result<TrialOutcome> {
    if gcc.size() == 0 {
        return Err(Error::invalid("graph has no nodes"));
    }
    let originator = gcc.pick(rng);
    let target = gcc.pick(rng);
    let mut tape = LazyTape::new(graph.edge_count(), rng);
    let immunized = flood(graph, heur, originator, &mut tape)?;
    let overlay = sample_overlay(graph, heur, &mut tape);
    let core = strongly_connected_components(&overlay).largest_members();
    let originator_in_gin = immunized.iter().any(|u| core.contains(u));
    let spread_fraction = immunized.intersection_len(&gcc.nodes) as f64 / gcc.size() as f64;
    let vulnerability_fraction = measure_vulnerability(graph, &gcc.nodes, &immunized, target)?;
    Ok(TrialOutcome {
        spread_fraction,
        vulnerability_fraction,
        originator_in_gin,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub tau_values: Vec<f64>,
    pub alpha_values: Vec<f64>,
    pub num_graphs: usize,
    pub trials_per_graph: usize,
    pub overlay_samples_per_graph: usize,
    pub master_seed: u64,
    /// Degree cutoff; `None` means `n − 1`.
    pub dmax: Option<usize>,
    /// Worker cap; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Attach analytic predictions to each cell.
    pub analytic: bool,
    pub solver: FixedPointConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n: 10_000,
            tau_values: vec![2.1, 2.2, 2.3, 2.4, 2.5, 2.6, 2.7, 2.8, 2.9, 3.0],
            alpha_values: vec![0.1, 0.4, 0.7, 1.0],
            num_graphs: 20,
            trials_per_graph: 200,
            overlay_samples_per_graph: 200,
            master_seed: 1,
            dmax: None,
            threads: None,
            analytic: true,
            solver: FixedPointConfig::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::invalid("n must be at least 2"));
        }
        if self.tau_values.is_empty() || self.alpha_values.is_empty() {
            return Err(Error::invalid("tau and alpha lists must be non-empty"));
        }
        if let Some(t) = self
            .tau_values
            .iter()
            .find(|t| !(t.is_finite() && **t > 0.0))
        {
            return Err(Error::invalid(format!(
                "tau values must be positive, got {t}"
            )));
        }
        if let Some(a) = self
            .alpha_values
            .iter()
            .find(|a| !(a.is_finite() && **a >= 0.0))
        {
            return Err(Error::invalid(format!(
                "alpha values must be >= 0, got {a}"
            )));
        }
        if self.num_graphs == 0 || self.trials_per_graph == 0 || self.overlay_samples_per_graph == 0
        {
            return Err(Error::invalid(
                "graph, trial and overlay-sample counts must be at least 1",
            ));
        }
        if self.threads == Some(0) {
            return Err(Error::invalid("threads must be at least 1"));
        }
        if self.dmax == Some(0) {
            return Err(Error::invalid("dmax must be positive"));
        }
        self.solver.validate()
    }

    pub fn effective_dmax(&self) -> usize {
        self.dmax.unwrap_or(self.n - 1)
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of work unit `task` on graph `graph` in cell `(tau_idx, alpha_idx)`:
/// the master seed is run through SplitMix64, then each coordinate in turn
/// is XORed in and remixed.
///
/// Task 0 generates the graph, tasks `1..=S` draw the overlay samples and
/// tasks `S+1..=S+T` run the trials.
pub fn derive_seed(
    master_seed: u64,
    tau_idx: usize,
    alpha_idx: usize,
    graph: usize,
    task: usize,
) -> u64 {
    [tau_idx, alpha_idx, graph, task]
        .into_iter()
        .fold(splitmix64(master_seed), |h, x| splitmix64(h ^ x as u64))
}

/// Mean with standard error of the mean over pooled samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanSe {
    pub mean: f64,
    pub se: f64,
    pub count: usize,
}

impl MeanSe {
    pub fn of(values: impl IntoIterator<Item = f64>) -> Self {
        let values: Vec<f64> = values.into_iter().collect();
        let count = values.len();
        if count == 0 {
            return Self {
                mean: f64::NAN,
                se: f64::NAN,
                count,
            };
        }
        let mean = values.iter().sum::<f64>() / count as f64;
        let se = if count > 1 {
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1) as f64;
            (var / count as f64).sqrt()
        } else {
            0.0
        };
        Self { mean, se, count }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationEstimates {
    pub gin_gcc: MeanSe,
    pub gout_gcc: MeanSe,
    pub gscc_gcc: MeanSe,
    pub spread: MeanSe,
    pub vulnerability: MeanSe,
    pub originator_in_gin: MeanSe,
    pub mean_gcc_size: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyticPrediction {
    pub gcc: f64,
    pub gin_gcc: f64,
    pub gout_gcc: f64,
    pub spread: f64,
    pub vulnerability: f64,
    pub diagnostics: SolveDiagnostics,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSummary {
    pub tau: f64,
    pub alpha: f64,
    pub simulation: Option<SimulationEstimates>,
    pub analytic: Option<AnalyticPrediction>,
    /// Why the simulation failed, if it did.
    pub error: Option<String>,
    /// Why the analytic prediction is missing, if it is.
    pub analytic_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentSummary {
    pub config: ExperimentConfig,
    pub cells: Vec<CellSummary>,
    pub wall_clock_seconds: f64,
}

/// One CSV row per cell. Missing estimates are written as empty fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub tau: f64,
    pub alpha: f64,
    pub n: usize,
    pub num_graphs: usize,
    pub trials: usize,
    pub gin_gcc_sim: Option<f64>,
    pub gin_gcc_se: Option<f64>,
    pub gout_gcc_sim: Option<f64>,
    pub gout_gcc_se: Option<f64>,
    pub spread_sim: Option<f64>,
    pub spread_se: Option<f64>,
    pub vuln_sim: Option<f64>,
    pub vuln_se: Option<f64>,
    pub gin_gcc_ana: Option<f64>,
    pub gout_gcc_ana: Option<f64>,
    pub spread_ana: Option<f64>,
    pub vuln_ana: Option<f64>,
}

pub const CSV_COLUMNS: [&str; 17] = [
    "tau",
    "alpha",
    "n",
    "num_graphs",
    "trials",
    "gin_gcc_sim",
    "gin_gcc_se",
    "gout_gcc_sim",
    "gout_gcc_se",
    "spread_sim",
    "spread_se",
    "vuln_sim",
    "vuln_se",
    "gin_gcc_ana",
    "gout_gcc_ana",
    "spread_ana",
    "vuln_ana",
];

impl ExperimentSummary {
    pub fn csv_rows(&self) -> Vec<CsvRow> {
        self.cells
            .iter()
            .map(|c| {
                let sim = c.simulation.as_ref();
                let ana = c.analytic.as_ref();
                CsvRow {
                    tau: c.tau,
                    alpha: c.alpha,
                    n: self.config.n,
                    num_graphs: self.config.num_graphs,
                    trials: self.config.trials_per_graph,
                    gin_gcc_sim: sim.map(|s| s.gin_gcc.mean),
                    gin_gcc_se: sim.map(|s| s.gin_gcc.se),
                    gout_gcc_sim: sim.map(|s| s.gout_gcc.mean),
                    gout_gcc_se: sim.map(|s| s.gout_gcc.se),
                    spread_sim: sim.map(|s| s.spread.mean),
                    spread_se: sim.map(|s| s.spread.se),
                    vuln_sim: sim.map(|s| s.vulnerability.mean),
                    vuln_se: sim.map(|s| s.vulnerability.se),
                    gin_gcc_ana: ana.map(|a| a.gin_gcc),
                    gout_gcc_ana: ana.map(|a| a.gout_gcc),
                    spread_ana: ana.map(|a| a.spread),
                    vuln_ana: ana.map(|a| a.vulnerability),
                }
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        write_csv(&self.csv_rows())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("summary serializes")
    }
}

pub fn write_csv(rows: &[CsvRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        writer.write_record(CSV_COLUMNS).expect("in-memory write");
    }
    for row in rows {
        writer.serialize(row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

pub fn read_csv(text: &str, origin: &std::path::Path) -> Result<Vec<CsvRow>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, record) in reader.deserialize().enumerate() {
        let row: CsvRow = record.map_err(|e| Error::parse(origin, i + 2, e.to_string()))?;
        rows.push(row);
    }
    Ok(rows)
}

struct GraphResult {
    gcc_size: usize,
    overlays: Vec<OverlayStats>,
    trials: Vec<TrialOutcome>,
}

fn run_graph(
    cfg: &ExperimentConfig,
    pmf: &DegreePmf,
    heur: &dyn Heuristic,
    cell: (usize, usize),
    g: usize,
) -> Result<GraphResult> {
    let seed = |task| derive_seed(cfg.master_seed, cell.0, cell.1, g, task);
    let mut rng = ChaCha8Rng::seed_from_u64(seed(0));
    let graph = generate(pmf, cfg.n, &mut rng)?;
    let gcc = GiantComponent::of(&graph);
    let s = cfg.overlay_samples_per_graph;
    let overlays = (0..s)
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed(1 + k));
            let overlay = sample_overlay(&graph, heur, &mut RngCoins(&mut rng));
            overlay_stats_with_gcc(&overlay, gcc.size())
        })
        .collect();
    let trials = (0..cfg.trials_per_graph)
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed(1 + s + k));
            run_trial(&graph, heur, &gcc, &mut rng)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GraphResult {
        gcc_size: gcc.size(),
        overlays,
        trials,
    })
}

fn summarize(results: &[GraphResult]) -> SimulationEstimates {
    let ratio = |f: fn(&OverlayStats) -> usize| {
        MeanSe::of(results.iter().flat_map(|r| {
            r.overlays
                .iter()
                .map(move |o| f(o) as f64 / r.gcc_size as f64)
        }))
    };
    let trials = || results.iter().flat_map(|r| r.trials.iter());
    SimulationEstimates {
        gin_gcc: ratio(|o| o.gin_size),
        gout_gcc: ratio(|o| o.gout_size),
        gscc_gcc: ratio(|o| o.gscc_size),
        spread: MeanSe::of(trials().map(|t| t.spread_fraction)),
        vulnerability: MeanSe::of(trials().map(|t| t.vulnerability_fraction)),
        originator_in_gin: MeanSe::of(trials().map(|t| f64::from(u8::from(t.originator_in_gin)))),
        mean_gcc_size: results.iter().map(|r| r.gcc_size as f64).sum::<f64>()
            / results.len() as f64,
    }
}

/// Sweep with the tanh heuristic at each alpha.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentSummary> {
    run_experiment_with(cfg, TanhHeuristic::new)
}

/// Sweep with an arbitrary heuristic family indexed by alpha.
///
/// Cells are independent: a failing cell is recorded and the rest still run.
/// Work units run in parallel but are reduced in (cell, graph, task) order,
/// so the result does not depend on the thread count.
pub fn run_experiment_with<H, F>(cfg: &ExperimentConfig, make: F) -> Result<ExperimentSummary>
where
    H: Heuristic + 'static,
    F: Fn(f64) -> Result<H> + Sync,
{
    cfg.validate()?;
    let started = Instant::now();
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(t) = cfg.threads {
            builder = builder.num_threads(t);
        }
        builder
            .build()
            .map_err(|e| Error::invalid(format!("cannot build thread pool: {e}")))?
    };
    let dmax = cfg.effective_dmax();
    let pmfs: Vec<Result<DegreePmf>> = cfg
        .tau_values
        .iter()
        .map(|&t| DegreePmf::power_law(t, dmax))
        .collect();

    let mut cells: Vec<CellSummary> =
        Vec::with_capacity(cfg.tau_values.len() * cfg.alpha_values.len());
    for (ti, &tau) in cfg.tau_values.iter().enumerate() {
        for (ai, &alpha) in cfg.alpha_values.iter().enumerate() {
            let outcome = (|| -> Result<SimulationEstimates> {
                let pmf = pmfs[ti]
                    .as_ref()
                    .map_err(|e| Error::invalid(e.to_string()))?;
                let heur = make(alpha)?;
                let results = pool.install(|| {
                    (0..cfg.num_graphs)
                        .into_par_iter()
                        .map(|g| run_graph(cfg, pmf, &heur, (ti, ai), g))
                        .collect::<Vec<_>>()
                });
                let results = results.into_iter().collect::<Result<Vec<_>>>()?;
                Ok(summarize(&results))
            })();
            let (simulation, error) = match outcome {
                Ok(s) => (Some(s), None),
                Err(e) => (None, Some(e.to_string())),
            };
            cells.push(CellSummary {
                tau,
                alpha,
                simulation,
                analytic: None,
                error,
                analytic_error: None,
            });
        }
    }

    if cfg.analytic {
        // One heuristic table per alpha, shared by every tau.
        for (ai, &alpha) in cfg.alpha_values.iter().enumerate() {
            let heur = match make(alpha) {
                Ok(h) => h,
                Err(e) => {
                    for ti in 0..cfg.tau_values.len() {
                        cells[ti * cfg.alpha_values.len() + ai].analytic_error =
                            Some(e.to_string());
                    }
                    continue;
                }
            };
            let table = HeuristicTable::new(&heur, dmax + 1, cfg.solver.table_budget_bytes);
            for (ti, pmf) in pmfs.iter().enumerate() {
                let cell = &mut cells[ti * cfg.alpha_values.len() + ai];
                let report = pmf
                    .as_ref()
                    .map_err(|e| Error::invalid(e.to_string()))
                    .and_then(|pmf| analyze_with_table(pmf, &table, &cfg.solver));
                match report {
                    Ok(r) => {
                        cell.analytic = Some(AnalyticPrediction {
                            gcc: r.gcc,
                            gin_gcc: r.gin_over_gcc,
                            gout_gcc: r.gout_over_gcc,
                            spread: r.spread,
                            vulnerability: r.vulnerability,
                            diagnostics: r.diagnostics,
                        })
                    }
                    Err(e) => cell.analytic_error = Some(e.to_string()),
                }
            }
        }
    }

    Ok(ExperimentSummary {
        config: cfg.clone(),
        cells,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
    })
}
