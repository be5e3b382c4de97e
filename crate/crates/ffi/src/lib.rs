//! C ABI over `immunet`.
//!
//! Objects cross the boundary as opaque heap handles that the caller must
//! release with the matching `*_free`. Every fallible call returns an
//! [`ImmunetStatus`]; on failure the message is available from
//! [`immunet_last_error`] on the same thread. Strings returned through out
//! parameters are owned by the caller and released with
//! [`immunet_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use immunet::analytic::{analyze, AnalyticReport, FixedPointConfig};
use immunet::degree_dist::DegreePmf;
use immunet::graph_gen::{generate, Multigraph};
use immunet::heuristics::{Heuristic, TanhHeuristic};
use immunet::simulate::{flood, run_experiment, ExperimentConfig, ExperimentSummary, RngCoins};
use immunet::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImmunetStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    Numerical = 3,
    Io = 4,
    Parse = 5,
    NoData = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

pub struct ImmunetPmf(DegreePmf);
pub struct ImmunetGraph(Multigraph);
pub struct ImmunetReport(AnalyticReport);
pub struct ImmunetExperiment(ExperimentSummary);

/// Headline numbers of an analytic report.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct ImmunetReportScalars {
    pub gcc: f64,
    pub gin: f64,
    pub gout: f64,
    pub gcc_v: f64,
    pub gin_over_gcc: f64,
    pub gout_over_gcc: f64,
    pub spread: f64,
    pub vulnerability: f64,
}

/// Experiment parameters. `dmax == 0` means `n - 1`; `threads == 0` means
/// the default pool.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct ImmunetExperimentConfig {
    pub n: usize,
    pub tau_values: *const f64,
    pub tau_count: usize,
    pub alpha_values: *const f64,
    pub alpha_count: usize,
    pub num_graphs: usize,
    pub trials_per_graph: usize,
    pub overlay_samples_per_graph: usize,
    pub master_seed: u64,
    pub dmax: usize,
    pub threads: usize,
    pub analytic: bool,
    pub tolerance: f64,
    pub max_iterations: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> ImmunetStatus {
    match err {
        Error::InvalidParameter(_) => ImmunetStatus::InvalidParameter,
        Error::Io { .. } => ImmunetStatus::Io,
        Error::Parse { .. } => ImmunetStatus::Parse,
        Error::NoData(_) => ImmunetStatus::NoData,
        _ => ImmunetStatus::Numerical,
    }
}

struct Fail(ImmunetStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(ImmunetStatus::NullPointer, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> ImmunetStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ImmunetStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ImmunetStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn path_arg(p: *const c_char) -> Result<PathBuf, Fail> {
    if p.is_null() {
        return Err(null("path"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map(PathBuf::from)
        .map_err(|_| Fail(ImmunetStatus::InvalidParameter, "path is not UTF-8".into()))
}

unsafe fn slice_arg<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

/// Message of the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn immunet_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn immunet_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn pmf_out(out: *mut *mut ImmunetPmf, pmf: DegreePmf) -> Result<(), Fail> {
    unsafe { put(out, Box::into_raw(Box::new(ImmunetPmf(pmf))), "out") }
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn immunet_pmf_power_law(
    tau: f64,
    dmax: usize,
    out: *mut *mut ImmunetPmf,
) -> ImmunetStatus {
    guard(|| pmf_out(out, DegreePmf::power_law(tau, dmax)?))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn immunet_pmf_poisson(
    z: f64,
    dmax: usize,
    out: *mut *mut ImmunetPmf,
) -> ImmunetStatus {
    guard(|| pmf_out(out, DegreePmf::poisson(z, dmax)?))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn immunet_pmf_point_mass(
    k: usize,
    out: *mut *mut ImmunetPmf,
) -> ImmunetStatus {
    guard(|| pmf_out(out, DegreePmf::point_mass(k)))
}

/// Normalizes `weights[0..len]` (index = degree) into a PMF.
///
/// # Safety
/// `weights` must point to `len` doubles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn immunet_pmf_from_weights(
    weights: *const f64,
    len: usize,
    out: *mut *mut ImmunetPmf,
) -> ImmunetStatus {
    guard(|| {
        pmf_out(
            out,
            DegreePmf::from_weights(slice_arg(weights, len, "weights")?.to_vec())?,
        )
    })
}

/// # Safety
/// `path` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn immunet_pmf_read(
    path: *const c_char,
    out: *mut *mut ImmunetPmf,
) -> ImmunetStatus {
    guard(|| pmf_out(out, DegreePmf::read_from(&path_arg(path)?)?))
}

/// # Safety
/// `pmf` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn immunet_pmf_free(pmf: *mut ImmunetPmf) {
    if !pmf.is_null() {
        drop(Box::from_raw(pmf));
    }
}

/// Largest degree in the support range, or 0 for a null handle.
///
/// # Safety
/// `pmf` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn immunet_pmf_dmax(pmf: *const ImmunetPmf) -> usize {
    pmf.as_ref().map_or(0, |p| p.0.dmax())
}

/// # Safety
/// `pmf` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn immunet_pmf_mean_degree(
    pmf: *const ImmunetPmf,
    out: *mut f64,
) -> ImmunetStatus {
    guard(|| put(out, deref(pmf, "pmf")?.0.mean_degree(), "out"))
}

/// # Safety
/// `pmf` must be a live handle; `branching` and `above` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn immunet_pmf_phase(
    pmf: *const ImmunetPmf,
    branching: *mut f64,
    above: *mut bool,
) -> ImmunetStatus {
    guard(|| {
        let phase = deref(pmf, "pmf")?.0.phase_criterion()?;
        put(branching, phase.branching_factor, "branching")?;
        put(above, phase.above_transition, "above")
    })
}

/// Forwarding probability of the tanh heuristic.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn immunet_tanh_heuristic(
    alpha: f64,
    a: u32,
    b: u32,
    out: *mut f64,
) -> ImmunetStatus {
    guard(|| put(out, TanhHeuristic::new(alpha)?.prob(a, b), "out"))
}

fn graph_out(out: *mut *mut ImmunetGraph, g: Multigraph) -> Result<(), Fail> {
    unsafe { put(out, Box::into_raw(Box::new(ImmunetGraph(g))), "out") }
}

/// Samples a configuration-model graph on `n` nodes.
///
/// # Safety
/// `pmf` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn immunet_graph_generate(
    pmf: *const ImmunetPmf,
    n: usize,
    seed: u64,
    out: *mut *mut ImmunetGraph,
) -> ImmunetStatus {
    guard(|| {
        let pmf = &deref(pmf, "pmf")?.0;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        graph_out(out, generate(pmf, n, &mut rng)?)
    })
}

/// # Safety
/// `path` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn immunet_graph_read(
    path: *const c_char,
    out: *mut *mut ImmunetGraph,
) -> ImmunetStatus {
    guard(|| graph_out(out, Multigraph::read_edge_list(&path_arg(path)?)?))
}

/// # Safety
/// `graph` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn immunet_graph_write(
    graph: *const ImmunetGraph,
    path: *const c_char,
) -> ImmunetStatus {
    guard(|| Ok(deref(graph, "graph")?.0.write_edge_list(&path_arg(path)?)?))
}

/// # Safety
/// `graph` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn immunet_graph_node_count(graph: *const ImmunetGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.node_count())
}

/// # Safety
/// `graph` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn immunet_graph_edge_count(graph: *const ImmunetGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Copies the edge list as `(u, v)` pairs into `pairs[0..2*capacity]`.
///
/// # Safety
/// `graph` must be a live handle; `pairs` must hold `2 * capacity` u32s.
#[no_mangle]
pub unsafe extern "C" fn immunet_graph_edges(
    graph: *const ImmunetGraph,
    pairs: *mut u32,
    capacity: usize,
) -> ImmunetStatus {
    guard(|| {
        let edges = deref(graph, "graph")?.0.edges();
        if capacity < edges.len() {
            return Err(Fail(
                ImmunetStatus::BufferTooSmall,
                format!("need room for {} edges, got {capacity}", edges.len()),
            ));
        }
        if edges.is_empty() {
            return Ok(());
        }
        if pairs.is_null() {
            return Err(null("pairs"));
        }
        let buf = std::slice::from_raw_parts_mut(pairs, 2 * edges.len());
        for (chunk, &(u, v)) in buf.chunks_exact_mut(2).zip(edges) {
            chunk[0] = u;
            chunk[1] = v;
        }
        Ok(())
    })
}

/// # Safety
/// `graph` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn immunet_graph_free(graph: *mut ImmunetGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Floods the tanh heuristic from `originator` and writes the number of
/// nodes reached. If `mask` is non-null it receives one byte per node
/// (1 = immunized).
///
/// # Safety
/// `graph` must be a live handle; `reached` must be valid for writes;
/// `mask`, if non-null, must hold `node_count` bytes.
#[no_mangle]
pub unsafe extern "C" fn immunet_flood(
    graph: *const ImmunetGraph,
    alpha: f64,
    originator: usize,
    seed: u64,
    reached: *mut usize,
    mask: *mut u8,
) -> ImmunetStatus {
    guard(|| {
        let graph = &deref(graph, "graph")?.0;
        let heur = TanhHeuristic::new(alpha)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let set = flood(graph, &heur, originator, &mut RngCoins(&mut rng))?;
        if !mask.is_null() {
            let m = std::slice::from_raw_parts_mut(mask, graph.node_count());
            for (slot, &hit) in m.iter_mut().zip(set.as_mask()) {
                *slot = u8::from(hit);
            }
        }
        put(reached, set.len(), "reached")
    })
}

/// Solves the fixed-point model for the tanh heuristic. Non-positive
/// `tolerance` or zero `max_iterations` select the defaults.
///
/// # Safety
/// `pmf` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn immunet_analyze(
    pmf: *const ImmunetPmf,
    alpha: f64,
    tolerance: f64,
    max_iterations: usize,
    out: *mut *mut ImmunetReport,
) -> ImmunetStatus {
    guard(|| {
        let pmf = &deref(pmf, "pmf")?.0;
        let cfg = solver_config(tolerance, max_iterations);
        let report = analyze(pmf, &TanhHeuristic::new(alpha)?, &cfg)?;
        put(out, Box::into_raw(Box::new(ImmunetReport(report))), "out")
    })
}

fn solver_config(tolerance: f64, max_iterations: usize) -> FixedPointConfig {
    let mut cfg = FixedPointConfig::default();
    if tolerance > 0.0 {
        cfg.tolerance = tolerance;
    }
    if max_iterations > 0 {
        cfg.max_iterations = max_iterations;
    }
    cfg
}

/// # Safety
/// `report` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn immunet_report_scalars(
    report: *const ImmunetReport,
    out: *mut ImmunetReportScalars,
) -> ImmunetStatus {
    guard(|| {
        let r = &deref(report, "report")?.0;
        let s = ImmunetReportScalars {
            gcc: r.gcc,
            gin: r.gin,
            gout: r.gout,
            gcc_v: r.gcc_v,
            gin_over_gcc: r.gin_over_gcc,
            gout_over_gcc: r.gout_over_gcc,
            spread: r.spread,
            vulnerability: r.vulnerability,
        };
        put(out, s, "out")
    })
}

/// JSON rendering of the report; `full` adds the per-degree vectors.
///
/// # Safety
/// `report` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn immunet_report_json(
    report: *const ImmunetReport,
    full: bool,
    out: *mut *mut c_char,
) -> ImmunetStatus {
    guard(|| {
        let json = deref(report, "report")?.0.to_json(full).to_string();
        put(out, into_c_string(json), "out")
    })
}

/// # Safety
/// `report` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn immunet_report_free(report: *mut ImmunetReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Runs a full tau × alpha sweep.
///
/// # Safety
/// `config` must be valid and its arrays must hold the stated counts;
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn immunet_experiment_run(
    config: *const ImmunetExperimentConfig,
    out: *mut *mut ImmunetExperiment,
) -> ImmunetStatus {
    guard(|| {
        let c = deref(config, "config")?;
        let cfg = ExperimentConfig {
            n: c.n,
            tau_values: slice_arg(c.tau_values, c.tau_count, "tau_values")?.to_vec(),
            alpha_values: slice_arg(c.alpha_values, c.alpha_count, "alpha_values")?.to_vec(),
            num_graphs: c.num_graphs,
            trials_per_graph: c.trials_per_graph,
            overlay_samples_per_graph: c.overlay_samples_per_graph,
            master_seed: c.master_seed,
            dmax: (c.dmax > 0).then_some(c.dmax),
            threads: (c.threads > 0).then_some(c.threads),
            analytic: c.analytic,
            solver: solver_config(c.tolerance, c.max_iterations),
        };
        let summary = run_experiment(&cfg)?;
        put(
            out,
            Box::into_raw(Box::new(ImmunetExperiment(summary))),
            "out",
        )
    })
}

/// Result table in CSV form.
///
/// # Safety
/// `experiment` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn immunet_experiment_csv(
    experiment: *const ImmunetExperiment,
    out: *mut *mut c_char,
) -> ImmunetStatus {
    guard(|| {
        put(
            out,
            into_c_string(deref(experiment, "experiment")?.0.to_csv()),
            "out",
        )
    })
}

/// Full summary with diagnostics in JSON form.
///
/// # Safety
/// `experiment` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn immunet_experiment_json(
    experiment: *const ImmunetExperiment,
    out: *mut *mut c_char,
) -> ImmunetStatus {
    guard(|| {
        let json = deref(experiment, "experiment")?.0.to_json().to_string();
        put(out, into_c_string(json), "out")
    })
}

/// # Safety
/// `experiment` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn immunet_experiment_free(experiment: *mut ImmunetExperiment) {
    if !experiment.is_null() {
        drop(Box::from_raw(experiment));
    }
}
