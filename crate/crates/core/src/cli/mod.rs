//! The `immunet` command line. Every subcommand accepts `--config FILE`
//! with `flag=value` lines; explicit flags override the file. Each file
//! output gets a manifest that can be fed back through `--config`.
//!
//! Exit codes: 0 success, 2 usage or invalid parameter, 3 numerical
//! failure, 4 I/O, parse or missing data.

pub mod config;
pub mod plot;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgAction, Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analytic::{analyze, FixedPointConfig};
use crate::degree_dist::DegreePmf;
use crate::error::{Error, Result};
use crate::graph_gen::generate;
use crate::heuristics::TanhHeuristic;
use crate::simulate::{read_csv, run_experiment, ExperimentConfig};
use config::{expand_config, RunManifest};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "immunet",
    version,
    about = "Vaccine flooding on scale-free configuration-model graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree-distribution statistics and phase verdict.
    #[command(args_override_self = true)]
    Dist(DistArgs),
    /// Sample one configuration-model graph and write its edge list.
    #[command(args_override_self = true)]
    Gen(GenArgs),
    /// Solve the fixed-point model and print a JSON report.
    #[command(args_override_self = true)]
    Analyze(AnalyzeArgs),
    /// Monte Carlo sweep over tau and alpha; writes results.csv and summary.json.
    #[command(args_override_self = true)]
    Simulate(SimulateArgs),
    /// Render the four SVG panels of an experiment CSV.
    #[command(args_override_self = true)]
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Args)]
pub struct PmfArgs {
    /// Power-law exponent.
    #[arg(long, conflicts_with = "pmf")]
    pub tau: Option<f64>,
    /// Degree PMF file to use instead of a power law.
    #[arg(long)]
    pub pmf: Option<PathBuf>,
    /// Degree cutoff (defaults to n-1 when --n is given).
    #[arg(long)]
    pub dmax: Option<usize>,
}

impl PmfArgs {
    fn load(&self, n: Option<usize>) -> Result<DegreePmf> {
        match (&self.pmf, self.tau) {
            (Some(path), _) => DegreePmf::read_from(path),
            (None, Some(tau)) => {
                let dmax = match (self.dmax, n) {
                    (Some(d), _) => d,
                    (None, Some(n)) if n >= 2 => n - 1,
                    _ => return Err(Error::invalid("--tau needs --dmax or --n")),
                };
                DegreePmf::power_law(tau, dmax)
            }
            (None, None) => Err(Error::invalid("one of --tau or --pmf is required")),
        }
    }

    fn record(&self, params: &mut Vec<(String, String)>) {
        if let Some(t) = self.tau {
            params.push(("tau".into(), t.to_string()));
        }
        if let Some(p) = &self.pmf {
            params.push(("pmf".into(), p.display().to_string()));
        }
        if let Some(d) = self.dmax {
            params.push(("dmax".into(), d.to_string()));
        }
    }
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[command(flatten)]
    pub pmf: PmfArgs,
    #[arg(long)]
    pub n: Option<usize>,
    /// Also write the PMF in text form here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub pmf: PmfArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long, env = "IMMUNET_SEED", default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    #[arg(long, default_value_t = FixedPointConfig::default().tolerance)]
    pub tol: f64,
    #[arg(long = "max-iter", default_value_t = FixedPointConfig::default().max_iterations)]
    pub max_iter: usize,
}

impl SolverArgs {
    fn config(&self) -> Result<FixedPointConfig> {
        let cfg = FixedPointConfig {
            tolerance: self.tol,
            max_iterations: self.max_iter,
            ..FixedPointConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn record(&self, params: &mut Vec<(String, String)>) {
        params.push(("tol".into(), self.tol.to_string()));
        params.push(("max-iter".into(), self.max_iter.to_string()));
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub pmf: PmfArgs,
    #[arg(long)]
    pub n: Option<usize>,
    /// Heuristic exponent.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Include the per-degree solution vectors.
    #[arg(long)]
    pub full: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn join_list(v: &[f64]) -> String {
    v.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Comma-separated tau values.
    #[arg(long = "tau-list", visible_alias = "tau", value_delimiter = ',', action = ArgAction::Set,
          default_value = "2.1,2.2,2.3,2.4,2.5,2.6,2.7,2.8,2.9,3.0")]
    pub tau_list: Vec<f64>,
    /// Comma-separated alpha values.
    #[arg(long = "alpha-list", visible_alias = "alpha", value_delimiter = ',', action = ArgAction::Set,
          default_value = "0.1,0.4,0.7,1.0")]
    pub alpha_list: Vec<f64>,
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    /// Degree cutoff, n-1 by default.
    #[arg(long)]
    pub dmax: Option<usize>,
    /// Graphs per (tau, alpha) cell.
    #[arg(long, default_value_t = 20)]
    pub graphs: usize,
    /// Flooding trials per graph.
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    /// Overlay samples per graph.
    #[arg(long = "overlay-samples", default_value_t = 200)]
    pub overlay_samples: usize,
    #[arg(long, env = "IMMUNET_SEED", default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Worker threads (results do not depend on it).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Skip the analytic predictions.
    #[arg(long = "no-analytic")]
    pub no_analytic: bool,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Experiment CSV.
    pub csv: Option<PathBuf>,
    /// Same as the positional CSV; the positional wins if both are given.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long = "tau-min", default_value_t = 2.0)]
    pub tau_min: f64,
    #[arg(long = "tau-max", default_value_t = 3.0)]
    pub tau_max: f64,
    #[arg(long = "y-min", default_value_t = 0.0)]
    pub y_min: f64,
    #[arg(long = "y-max", default_value_t = 1.0)]
    pub y_max: f64,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn manifest_path_for(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest");
    PathBuf::from(s)
}

fn run_dist(args: &DistArgs, stdout: &mut dyn Write) -> Result<()> {
    let started = now();
    let pmf = args.pmf.load(args.n)?;
    let phase = pmf.phase_criterion()?;
    let verdict = if phase.above_transition {
        "above"
    } else {
        "below"
    };
    let report = format!(
        "dmax={}\nmean_degree={}\nbranching_factor={}\nphase={verdict}\n",
        pmf.dmax(),
        pmf.mean_degree(),
        phase.branching_factor
    );
    stdout
        .write_all(report.as_bytes())
        .map_err(|e| Error::io("<stdout>", e))?;
    if let Some(out) = &args.out {
        pmf.write_to(out)?;
        let mut parameters = Vec::new();
        args.pmf.record(&mut parameters);
        if let Some(n) = args.n {
            parameters.push(("n".into(), n.to_string()));
        }
        parameters.push(("out".into(), out.display().to_string()));
        RunManifest {
            subcommand: "dist".into(),
            parameters,
            inputs: args
                .pmf
                .pmf
                .iter()
                .map(|p| p.display().to_string())
                .collect(),
            outputs: vec![out.display().to_string()],
            started,
            finished: now(),
        }
        .write(&manifest_path_for(out))?;
    }
    Ok(())
}

fn run_gen(args: &GenArgs) -> Result<()> {
    let started = now();
    let pmf = args.pmf.load(Some(args.n))?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let graph = generate(&pmf, args.n, &mut rng)?;
    graph.write_edge_list(&args.out)?;
    let mut parameters = Vec::new();
    args.pmf.record(&mut parameters);
    parameters.push(("n".into(), args.n.to_string()));
    parameters.push(("seed".into(), args.seed.to_string()));
    parameters.push(("out".into(), args.out.display().to_string()));
    RunManifest {
        subcommand: "gen".into(),
        parameters,
        inputs: args
            .pmf
            .pmf
            .iter()
            .map(|p| p.display().to_string())
            .collect(),
        outputs: vec![args.out.display().to_string()],
        started,
        finished: now(),
    }
    .write(&manifest_path_for(&args.out))
}

fn run_analyze(args: &AnalyzeArgs, stdout: &mut dyn Write) -> Result<()> {
    let started = now();
    let cfg = args.solver.config()?;
    let heur = TanhHeuristic::new(args.alpha)?;
    let pmf = args.pmf.load(args.n)?;
    let report = analyze(&pmf, &heur, &cfg)?;
    let mut json =
        serde_json::to_string_pretty(&report.to_json(args.full)).expect("report serializes");
    json.push('\n');
    match &args.out {
        None => stdout
            .write_all(json.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
        Some(out) => {
            write_file(out, json)?;
            let mut parameters = Vec::new();
            args.pmf.record(&mut parameters);
            if let Some(n) = args.n {
                parameters.push(("n".into(), n.to_string()));
            }
            parameters.push(("alpha".into(), args.alpha.to_string()));
            args.solver.record(&mut parameters);
            parameters.push(("full".into(), args.full.to_string()));
            parameters.push(("out".into(), out.display().to_string()));
            RunManifest {
                subcommand: "analyze".into(),
                parameters,
                inputs: args
                    .pmf
                    .pmf
                    .iter()
                    .map(|p| p.display().to_string())
                    .collect(),
                outputs: vec![out.display().to_string()],
                started,
                finished: now(),
            }
            .write(&manifest_path_for(out))
        }
    }
}

fn run_simulate(args: &SimulateArgs) -> Result<()> {
    let started = now();
    let cfg = ExperimentConfig {
        n: args.n,
        tau_values: args.tau_list.clone(),
        alpha_values: args.alpha_list.clone(),
        num_graphs: args.graphs,
        trials_per_graph: args.trials,
        overlay_samples_per_graph: args.overlay_samples,
        master_seed: args.seed,
        dmax: args.dmax,
        threads: args.threads,
        analytic: !args.no_analytic,
        solver: args.solver.config()?,
    };
    let summary = run_experiment(&cfg)?;
    std::fs::create_dir_all(&args.out).map_err(|e| Error::io(&args.out, e))?;
    let csv_path = args.out.join("results.csv");
    let json_path = args.out.join("summary.json");
    write_file(&csv_path, summary.to_csv())?;
    let mut json = serde_json::to_string_pretty(&summary.to_json()).expect("summary serializes");
    json.push('\n');
    write_file(&json_path, json)?;

    let mut parameters = vec![
        ("tau-list".to_string(), join_list(&args.tau_list)),
        ("alpha-list".into(), join_list(&args.alpha_list)),
        ("n".into(), args.n.to_string()),
    ];
    if let Some(d) = args.dmax {
        parameters.push(("dmax".into(), d.to_string()));
    }
    parameters.extend([
        ("graphs".into(), args.graphs.to_string()),
        ("trials".into(), args.trials.to_string()),
        ("overlay-samples".into(), args.overlay_samples.to_string()),
        ("seed".into(), args.seed.to_string()),
    ]);
    args.solver.record(&mut parameters);
    if let Some(t) = args.threads {
        parameters.push(("threads".into(), t.to_string()));
    }
    parameters.push(("no-analytic".into(), args.no_analytic.to_string()));
    parameters.push(("out".into(), args.out.display().to_string()));
    RunManifest {
        subcommand: "simulate".into(),
        parameters,
        inputs: vec![],
        outputs: vec![
            csv_path.display().to_string(),
            json_path.display().to_string(),
        ],
        started,
        finished: now(),
    }
    .write(&args.out.join("manifest.conf"))
}

fn run_plot(args: &PlotArgs) -> Result<()> {
    let started = now();
    let input = args
        .csv
        .as_ref()
        .or(args.input.as_ref())
        .ok_or_else(|| Error::invalid("an input CSV is required"))?;
    let text = std::fs::read_to_string(input).map_err(|e| Error::io(input, e))?;
    let rows = read_csv(&text, input)?;
    let axes = plot::Axes {
        x_min: args.tau_min,
        x_max: args.tau_max,
        y_min: args.y_min,
        y_max: args.y_max,
    };
    let written = plot::plot_csv(&rows, &args.out, &axes)?;
    RunManifest {
        subcommand: "plot".into(),
        parameters: vec![
            ("input".into(), input.display().to_string()),
            ("out".into(), args.out.display().to_string()),
            ("tau-min".into(), args.tau_min.to_string()),
            ("tau-max".into(), args.tau_max.to_string()),
            ("y-min".into(), args.y_min.to_string()),
            ("y-max".into(), args.y_max.to_string()),
        ],
        inputs: vec![input.display().to_string()],
        outputs: written.iter().map(|p| p.display().to_string()).collect(),
        started,
        finished: now(),
    }
    .write(&args.out.join("manifest.conf"))
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Dist(a) => run_dist(a, stdout),
        Command::Gen(a) => run_gen(a),
        Command::Analyze(a) => run_analyze(a, stdout),
        Command::Simulate(a) => run_simulate(a),
        Command::Plot(a) => run_plot(a),
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidParameter(_) => EXIT_USAGE,
        e if e.is_numerical() => EXIT_NUMERICAL,
        _ => EXIT_IO,
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn main_with_args(args: Vec<OsString>) -> i32 {
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match run(&cli, &mut std::io::stdout().lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn exit_code_mapping() {
        assert_eq!(exit_code(&Error::invalid("x")), EXIT_USAGE);
        assert_eq!(exit_code(&Error::BelowTransition("gin")), EXIT_NUMERICAL);
        assert_eq!(exit_code(&Error::NoData("x".into())), EXIT_IO);
    }

    #[test]
    fn lists_parse_and_last_occurrence_wins() {
        let cli = Cli::try_parse_from([
            "immunet",
            "simulate",
            "--out",
            "o",
            "--tau-list",
            "2.1,2.5",
            "--tau",
            "2.3",
        ])
        .unwrap();
        let Command::Simulate(a) = cli.command else {
            panic!()
        };
        assert_eq!(a.tau_list, vec![2.3]);
        assert_eq!(a.alpha_list, vec![0.1, 0.4, 0.7, 1.0]);
        assert_eq!(join_list(&[2.1, 1.0]), "2.1,1");
        assert!(
            Cli::try_parse_from(["immunet", "simulate", "--out", "o", "--tau", "2.1,x"]).is_err()
        );
    }
}
