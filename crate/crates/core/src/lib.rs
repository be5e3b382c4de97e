//! Degree-biased vaccine flooding on configuration-model graphs: degree
//! distributions, graph generation, component analysis, the mean-field
//! fixed-point model, and a Monte Carlo experiment driver.

pub mod analytic;
pub mod cli;
pub mod components;
pub mod degree_dist;
pub mod error;
pub mod graph_gen;
pub mod heuristics;
pub mod simulate;

pub use analytic::{analyze, AnalyticReport, FixedPointConfig};
pub use components::{DirectedOverlay, NodeSet};
pub use degree_dist::DegreePmf;
pub use error::{Error, Result};
pub use graph_gen::{generate, Multigraph};
pub use heuristics::{Heuristic, TanhHeuristic};
pub use simulate::{run_experiment, ExperimentConfig, ExperimentSummary};
