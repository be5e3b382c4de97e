//! Infinite-size predictions for heuristic flooding on random graphs with a
//! given degree distribution.
//!
//! Every unknown here is a "dead end" probability: the chance that following
//! an edge out of a node leads only to a vanishing part of the graph. Each
//! family satisfies a monotone fixed-point equation that also has the trivial
//! all-ones solution. Iterating from zero converges upward to the least
//! solution, which is the meaningful one.
//!
//! * `q`: reach through a neighbor in the graph itself. Gives the giant
//!   component fraction `gcc`.
//! * `dein`/`qin`: reach through forwarding arcs. Gives the giant
//!   in-component fraction `gin`.
//! * `deout`/`qout`: reach into a node along forwarding arcs. Gives the giant
//!   out-component fraction `gout`.
//! * `degcc`/`qgcc`: reach among nodes left outside the out-component. Gives
//!   the vulnerable giant component fraction `gcc_v`.
//!
//! Sweeps are Jacobi-style: every degree is updated from the previous iterate.

use serde::Serialize;

use crate::degree_dist::DegreePmf;
use crate::error::{Error, Result};
use crate::heuristics::Heuristic;

/// Denominator threshold below which the conditional forwarding probability
/// of a non-immunized node is taken to be zero.
pub const GUARD_THRESHOLD: f64 = 1e-15;

/// Slack allowed on `gin ≤ gcc` and `gout ≤ gcc`.
pub const CONTAINMENT_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FixedPointConfig {
    /// Max-norm residual at which an iterate is accepted.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Step fraction in `(0, 1]`; 1 is plain Picard iteration.
    pub damping: f64,
    /// Largest heuristic table (in bytes) kept in memory. Larger supports
    /// re-evaluate the heuristic on every sweep.
    pub table_budget_bytes: usize,
}

impl Default for FixedPointConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-12,
            max_iterations: 100_000,
            damping: 1.0,
            table_budget_bytes: 1 << 30,
        }
    }
}

impl FixedPointConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::invalid(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::invalid("max_iterations must be at least 1"));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::invalid(format!(
                "damping must lie in (0,1], got {}",
                self.damping
            )));
        }
        Ok(())
    }
}

/// Convergence diagnostics for one fixed-point solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolveStats {
    pub iterations: usize,
    /// Max-norm distance between the returned vector and its image.
    pub residual: f64,
    /// Largest drop of any component between consecutive iterates. Zero for
    /// a monotone run up to rounding.
    pub max_decrease: f64,
}

/// `h(a, b)` for all `a, b < dim`, either cached densely or recomputed.
pub struct HeuristicTable<'h> {
    heur: &'h dyn Heuristic,
    dim: usize,
    dense: Option<Vec<f64>>,
}

impl<'h> HeuristicTable<'h> {
    /// Caches the table when `dim²` doubles fit in `budget_bytes`.
    pub fn new(heur: &'h dyn Heuristic, dim: usize, budget_bytes: usize) -> Self {
        let bytes = dim
            .saturating_mul(dim)
            .saturating_mul(std::mem::size_of::<f64>());
        let dense = (bytes <= budget_bytes).then(|| {
            let mut data = vec![0.0; dim * dim];
            for (a, row) in data.chunks_exact_mut(dim).enumerate() {
                heur.fill_row(a as u32, row);
            }
            data
        });
        Self { heur, dim, dense }
    }

    pub fn for_pmf(heur: &'h dyn Heuristic, pmf: &DegreePmf, cfg: &FixedPointConfig) -> Self {
        Self::new(heur, pmf.dmax() + 1, cfg.table_budget_bytes)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_cached(&self) -> bool {
        self.dense.is_some()
    }

    /// Row `a`, i.e. `h(a, b)` for every `b`. `scratch` is used when the table
    /// is not cached.
    fn row<'s>(&'s self, a: usize, scratch: &'s mut [f64]) -> &'s [f64] {
        match &self.dense {
            Some(data) => &data[a * self.dim..(a + 1) * self.dim],
            None => {
                self.heur.fill_row(a as u32, scratch);
                scratch
            }
        }
    }

    fn check(&self, pmf: &DegreePmf) -> Result<()> {
        if self.dim < pmf.dmax() + 1 {
            return Err(Error::invalid(format!(
                "heuristic table covers degrees < {} but the distribution reaches {}",
                self.dim,
                pmf.dmax()
            )));
        }
        Ok(())
    }
}

fn small_reach(dead_end: &[f64]) -> Vec<f64> {
    dead_end
        .iter()
        .enumerate()
        .map(|(b, &d)| if b == 0 { 1.0 } else { d.powi(b as i32 - 1) })
        .collect()
}

/// `Σ_a (1 − x_a^a)·p_a`: fraction of nodes with at least one live neighbor.
fn live_fraction(pmf: &DegreePmf, dead_end: &[f64]) -> f64 {
    pmf.probs()
        .iter()
        .zip(dead_end)
        .enumerate()
        .rev()
        .map(|(a, (&p, &d))| p * (1.0 - d.powi(a as i32)))
        .sum()
}

/// Picard iteration from `start` until the residual of the current iterate
/// falls to the tolerance.
fn iterate(
    stage: &'static str,
    start: Vec<f64>,
    cfg: &FixedPointConfig,
    mut map: impl FnMut(&[f64], &mut [f64]),
) -> Result<(Vec<f64>, SolveStats)> {
    cfg.validate()?;
    let mut x = start;
    let mut image = vec![0.0; x.len()];
    let mut max_decrease = 0.0f64;
    let mut residual = f64::INFINITY;
    for iteration in 1..=cfg.max_iterations {
        map(&x, &mut image);
        residual = x
            .iter()
            .zip(&image)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if residual <= cfg.tolerance {
            return Ok((
                x,
                SolveStats {
                    iterations: iteration,
                    residual,
                    max_decrease,
                },
            ));
        }
        for (xi, &fi) in x.iter_mut().zip(&image) {
            let next = *xi + cfg.damping * (fi - *xi);
            max_decrease = max_decrease.max(*xi - next);
            *xi = next;
        }
    }
    Err(Error::Convergence {
        stage,
        iterations: cfg.max_iterations,
        residual,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GccSolution {
    pub q: f64,
    pub gcc: f64,
    pub stats: SolveStats,
}

/// Least root of `q = Σ_b q^(b−1)·b·p_b/Z` and `gcc = 1 − Σ_a q^a·p_a`.
///
/// At or below the phase transition the least root is `q = 1`; it is
/// returned directly because iteration from zero only creeps towards it.
pub fn solve_gcc(pmf: &DegreePmf, cfg: &FixedPointConfig) -> Result<GccSolution> {
    cfg.validate()?;
    let w = pmf.edge_end_weights()?;
    if !pmf.phase_criterion()?.above_transition {
        return Ok(GccSolution {
            q: 1.0,
            gcc: 0.0,
            stats: SolveStats {
                iterations: 0,
                residual: 0.0,
                max_decrease: 0.0,
            },
        });
    }
    let (q, stats) = iterate("solve_gcc", vec![0.0], cfg, |x, out| {
        let q = x[0];
        let s: f64 = w
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .map(|(b, &wb)| q.powi(b as i32 - 1) * wb)
            .sum();
        out[0] = s.clamp(0.0, 1.0);
    })?;
    let q = q[0];
    let gcc = pmf
        .probs()
        .iter()
        .enumerate()
        .rev()
        .map(|(a, &p)| p * (1.0 - q.powi(a as i32)))
        .sum();
    Ok(GccSolution { q, gcc, stats })
}

/// Per-degree dead-end probabilities of one reachability system together
/// with the giant-set fraction they imply.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeadEndSolution {
    /// Dead-end probability indexed by the degree of the node looking outward.
    pub dead_end: Vec<f64>,
    /// `dead_end[b]^(b−1)`: small reach past a degree-`b` neighbor.
    pub small_reach: Vec<f64>,
    /// Fraction of all nodes in the giant in- or out-component.
    pub fraction: f64,
    pub stats: SolveStats,
}

/// Giant in-component: `δ_a = Σ_b (1 − h(a,b) + h(a,b)·δ_b^(b−1))·b·p_b/Z`.
pub fn solve_gin(
    pmf: &DegreePmf,
    heur: &dyn Heuristic,
    cfg: &FixedPointConfig,
) -> Result<DeadEndSolution> {
    solve_gin_with(pmf, &HeuristicTable::for_pmf(heur, pmf, cfg), cfg)
}

pub fn solve_gin_with(
    pmf: &DegreePmf,
    table: &HeuristicTable<'_>,
    cfg: &FixedPointConfig,
) -> Result<DeadEndSolution> {
    table.check(pmf)?;
    let w = pmf.edge_end_weights()?;
    let total_w: f64 = w.iter().sum();
    let dim = pmf.dmax() + 1;
    let mut c = vec![0.0; dim];
    let mut scratch = vec![0.0; table.dim()];
    let (dead_end, stats) = iterate("solve_gin", vec![0.0; dim], cfg, |x, out| {
        for (b, cb) in c.iter_mut().enumerate() {
            let q = if b == 0 { 1.0 } else { x[b].powi(b as i32 - 1) };
            *cb = (1.0 - q) * w[b];
        }
        for (a, o) in out.iter_mut().enumerate() {
            let row = table.row(a, &mut scratch);
            let mut acc = 0.0;
            for b in 0..dim {
                acc += row[b] * c[b];
            }
            *o = (total_w - acc).clamp(0.0, 1.0);
        }
    })?;
    Ok(finish(pmf, dead_end, stats))
}

/// Giant out-component: as [`solve_gin`] with `h(b,a)` in place of `h(a,b)`.
pub fn solve_gout(
    pmf: &DegreePmf,
    heur: &dyn Heuristic,
    cfg: &FixedPointConfig,
) -> Result<DeadEndSolution> {
    solve_gout_with(pmf, &HeuristicTable::for_pmf(heur, pmf, cfg), cfg)
}

pub fn solve_gout_with(
    pmf: &DegreePmf,
    table: &HeuristicTable<'_>,
    cfg: &FixedPointConfig,
) -> Result<DeadEndSolution> {
    table.check(pmf)?;
    let w = pmf.edge_end_weights()?;
    let total_w: f64 = w.iter().sum();
    let dim = pmf.dmax() + 1;
    let mut c = vec![0.0; dim];
    let mut acc = vec![0.0; dim];
    let mut scratch = vec![0.0; table.dim()];
    let (dead_end, stats) = iterate("solve_gout", vec![0.0; dim], cfg, |x, out| {
        for (b, cb) in c.iter_mut().enumerate() {
            let q = if b == 0 { 1.0 } else { x[b].powi(b as i32 - 1) };
            *cb = (1.0 - q) * w[b];
        }
        acc.fill(0.0);
        // Row b of the table is h(b, ·); accumulating row by row keeps each
        // acc[a] summed over b in ascending order.
        for (b, &cb) in c.iter().enumerate() {
            if cb == 0.0 {
                continue;
            }
            let row = &table.row(b, &mut scratch)[..dim];
            for (acc_a, &h) in acc.iter_mut().zip(row) {
                *acc_a += h * cb;
            }
        }
        for (o, &s) in out.iter_mut().zip(&acc) {
            *o = (total_w - s).clamp(0.0, 1.0);
        }
    })?;
    Ok(finish(pmf, dead_end, stats))
}

fn finish(pmf: &DegreePmf, dead_end: Vec<f64>, stats: SolveStats) -> DeadEndSolution {
    DeadEndSolution {
        small_reach: small_reach(&dead_end),
        fraction: live_fraction(pmf, &dead_end),
        dead_end,
        stats,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VulnerableSolution {
    /// Dead-end probability in the vulnerable subgraph, by degree.
    pub dead_end: Vec<f64>,
    pub small_reach: Vec<f64>,
    /// Fraction of all nodes in the giant component of the vulnerable subgraph.
    pub gcc_v: f64,
    pub stats: SolveStats,
    /// Degree pairs whose conditional forwarding probability was set to zero
    /// because its conditioning event has (numerically) no mass.
    pub guard_activations: usize,
    /// Degrees whose out-component dead-end probability is exactly zero, so
    /// no node of that degree stays outside the out-component.
    pub empty_rows: usize,
}

/// Giant component of the subgraph left after removing every edge touching
/// the giant out-component.
///
/// For a degree-`a` node `u` outside the out-component and a degree-`b`
/// neighbor `v`:
///
/// * `ĥ(a,b) = h(b,a)·qout_b / (1 − h(b,a) + h(b,a)·qout_b)`: probability
///   that `v → u` is an arc;
/// * `P̂(a,b) = (1 − h(b,a) + h(b,a)·qout_b)/deout_a · b·p_b/Z`: degree law
///   of `v`;
/// * `degcc_a = Σ_b [ĥ·qgcc_b + (1 − ĥ)(1 − qout_b + qout_b·qgcc_b)]·P̂`,
///   with `qgcc_b = degcc_b^(b−1)`;
/// * `gcc_v = Σ_a deout_a^a·(1 − degcc_a^a)·p_a`.
pub fn solve_gcc_v(
    pmf: &DegreePmf,
    heur: &dyn Heuristic,
    out: &DeadEndSolution,
    cfg: &FixedPointConfig,
) -> Result<VulnerableSolution> {
    solve_gcc_v_with(pmf, &HeuristicTable::for_pmf(heur, pmf, cfg), out, cfg)
}

pub fn solve_gcc_v_with(
    pmf: &DegreePmf,
    table: &HeuristicTable<'_>,
    out: &DeadEndSolution,
    cfg: &FixedPointConfig,
) -> Result<VulnerableSolution> {
    table.check(pmf)?;
    let dim = pmf.dmax() + 1;
    if out.dead_end.len() != dim || out.small_reach.len() != dim {
        return Err(Error::invalid(
            "out-component solution does not match the distribution",
        ));
    }
    let w = pmf.edge_end_weights()?;
    let deout = &out.dead_end;
    let qout = &out.small_reach;
    let mut scratch = vec![0.0; table.dim()];

    // Expanding the bracket against P̂ turns each term into
    // Y_b + h(b,a)·(X_b − Y_b), with X_b = qout_b·qgcc_b·w_b and
    // Y_b = (1 − qout_b + qout_b·qgcc_b)·w_b, all divided by deout_a. Pairs
    // hit by the guard get an exact correction term on top of that.
    let mut guarded: Vec<(u32, u32, f64)> = Vec::new();
    for b in 1..dim {
        if w[b] == 0.0 {
            continue;
        }
        let row = &table.row(b, &mut scratch)[..dim];
        for (a, &h) in row.iter().enumerate() {
            let den = 1.0 - h + h * qout[b];
            if den < GUARD_THRESHOLD && deout[a] > 0.0 {
                guarded.push((a as u32, b as u32, h * qout[b] * w[b] * (1.0 - qout[b])));
            }
        }
    }
    let empty_rows = deout.iter().filter(|&&d| d == 0.0).count();

    let mut diff = vec![0.0; dim];
    let mut acc = vec![0.0; dim];
    let (dead_end, stats) = iterate("solve_gcc_v", vec![0.0; dim], cfg, |x, image| {
        let mut sum_y = 0.0;
        for b in 0..dim {
            let qg = if b == 0 { 1.0 } else { x[b].powi(b as i32 - 1) };
            let xb = qout[b] * qg * w[b];
            let yb = (1.0 - qout[b] + qout[b] * qg) * w[b];
            sum_y += yb;
            diff[b] = xb - yb;
        }
        acc.fill(0.0);
        for (b, &d) in diff.iter().enumerate() {
            if d == 0.0 {
                continue;
            }
            let row = &table.row(b, &mut scratch)[..dim];
            for (acc_a, &h) in acc.iter_mut().zip(row) {
                *acc_a += h * d;
            }
        }
        for &(a, b, coef) in &guarded {
            let b = b as usize;
            let qg = x[b].powi(b as i32 - 1);
            acc[a as usize] += coef * (1.0 - qg);
        }
        for a in 0..dim {
            image[a] = if deout[a] > 0.0 {
                ((sum_y + acc[a]) / deout[a]).clamp(0.0, 1.0)
            } else {
                1.0
            };
        }
    })?;

    let gcc_v = pmf
        .probs()
        .iter()
        .enumerate()
        .rev()
        .map(|(a, &p)| p * deout[a].powi(a as i32) * (1.0 - dead_end[a].powi(a as i32)))
        .sum();
    Ok(VulnerableSolution {
        small_reach: small_reach(&dead_end),
        dead_end,
        gcc_v,
        stats,
        guard_activations: guarded.len(),
        empty_rows,
    })
}

/// Expected fraction of the giant component that receives the vaccine:
/// `gin·gout / gcc²`.
pub fn expected_spread(gin: f64, gout: f64, gcc: f64) -> Result<f64> {
    if gcc <= 0.0 {
        return Err(Error::BelowTransition("expected_spread"));
    }
    Ok(gin * gout / (gcc * gcc))
}

/// Expected fraction of the giant component a single infection can reach:
/// `1 − gin/gcc + (gin/gcc)·(gcc_v/gcc)²`.
pub fn expected_vulnerability(gin: f64, gcc: f64, gcc_v: f64) -> Result<f64> {
    if gcc <= 0.0 {
        return Err(Error::BelowTransition("expected_vulnerability"));
    }
    let reach = gin / gcc;
    let core = gcc_v / gcc;
    Ok(1.0 - reach + reach * core * core)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveDiagnostics {
    pub gcc: SolveStats,
    pub gin: SolveStats,
    pub gout: SolveStats,
    pub gcc_v: SolveStats,
    pub guard_activations: usize,
    pub empty_rows: usize,
    pub table_cached: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyticReport {
    pub dmax: usize,
    pub mean_degree: f64,
    pub branching_factor: f64,
    pub q: f64,
    pub gcc: f64,
    pub gin: f64,
    pub gout: f64,
    pub gcc_v: f64,
    pub gin_over_gcc: f64,
    pub gout_over_gcc: f64,
    pub spread: f64,
    pub vulnerability: f64,
    pub tolerance: f64,
    pub diagnostics: SolveDiagnostics,
    pub dein: Vec<f64>,
    pub qin: Vec<f64>,
    pub deout: Vec<f64>,
    pub qout: Vec<f64>,
    pub degcc: Vec<f64>,
    pub qgcc: Vec<f64>,
}

const VECTOR_FIELDS: [&str; 6] = ["dein", "qin", "deout", "qout", "degcc", "qgcc"];

impl AnalyticReport {
    /// JSON document; per-degree vectors are included only when `full`.
    pub fn to_json(&self, full: bool) -> serde_json::Value {
        let mut value = serde_json::to_value(self).expect("report serializes");
        if !full {
            if let Some(map) = value.as_object_mut() {
                for key in VECTOR_FIELDS {
                    map.remove(key);
                }
            }
        }
        value
    }

    /// Every probability lies in `[0, 1]`, containment holds, and every solve
    /// met the tolerance.
    pub fn check_invariants(&self) -> Result<()> {
        let scalars = [
            ("q", self.q),
            ("gcc", self.gcc),
            ("gin", self.gin),
            ("gout", self.gout),
            ("gcc_v", self.gcc_v),
            ("spread", self.spread),
            ("vulnerability", self.vulnerability),
        ];
        for (name, v) in scalars {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvariantViolation(format!(
                    "{name} = {v} outside [0,1]"
                )));
            }
        }
        let vectors = [
            ("dein", &self.dein),
            ("qin", &self.qin),
            ("deout", &self.deout),
            ("qout", &self.qout),
            ("degcc", &self.degcc),
            ("qgcc", &self.qgcc),
        ];
        for (name, v) in vectors {
            if let Some((a, x)) = v
                .iter()
                .enumerate()
                .find(|(_, x)| !(0.0..=1.0).contains(*x))
            {
                return Err(Error::InvariantViolation(format!(
                    "{name}[{a}] = {x} outside [0,1]"
                )));
            }
        }
        if self.gin > self.gcc + CONTAINMENT_SLACK || self.gout > self.gcc + CONTAINMENT_SLACK {
            return Err(Error::InvariantViolation(format!(
                "gin={} gout={} exceed gcc={}",
                self.gin, self.gout, self.gcc
            )));
        }
        let d = &self.diagnostics;
        for (name, s) in [
            ("gcc", d.gcc),
            ("gin", d.gin),
            ("gout", d.gout),
            ("gcc_v", d.gcc_v),
        ] {
            if s.residual > self.tolerance {
                return Err(Error::InvariantViolation(format!(
                    "{name} residual {} above tolerance {}",
                    s.residual, self.tolerance
                )));
            }
        }
        Ok(())
    }
}

/// Runs every solver for `pmf` under `heur` and combines the results.
pub fn analyze(
    pmf: &DegreePmf,
    heur: &dyn Heuristic,
    cfg: &FixedPointConfig,
) -> Result<AnalyticReport> {
    cfg.validate()?;
    analyze_with_table(pmf, &HeuristicTable::for_pmf(heur, pmf, cfg), cfg)
}

/// [`analyze`] against a prebuilt table, which may be shared by several
/// distributions with the same or smaller support.
pub fn analyze_with_table(
    pmf: &DegreePmf,
    table: &HeuristicTable<'_>,
    cfg: &FixedPointConfig,
) -> Result<AnalyticReport> {
    cfg.validate()?;
    let phase = pmf.phase_criterion()?;
    let gcc = solve_gcc(pmf, cfg)?;
    if gcc.gcc <= 0.0 {
        return Err(Error::BelowTransition("solve_gcc"));
    }
    let gin = solve_gin_with(pmf, table, cfg)?;
    let gout = solve_gout_with(pmf, table, cfg)?;
    let vuln = solve_gcc_v_with(pmf, table, &gout, cfg)?;
    let spread = expected_spread(gin.fraction, gout.fraction, gcc.gcc)?;
    let vulnerability = expected_vulnerability(gin.fraction, gcc.gcc, vuln.gcc_v)?;
    let report = AnalyticReport {
        dmax: pmf.dmax(),
        mean_degree: pmf.mean_degree(),
        branching_factor: phase.branching_factor,
        q: gcc.q,
        gcc: gcc.gcc,
        gin: gin.fraction,
        gout: gout.fraction,
        gcc_v: vuln.gcc_v,
        gin_over_gcc: gin.fraction / gcc.gcc,
        gout_over_gcc: gout.fraction / gcc.gcc,
        spread,
        vulnerability,
        tolerance: cfg.tolerance,
        diagnostics: SolveDiagnostics {
            gcc: gcc.stats,
            gin: gin.stats,
            gout: gout.stats,
            gcc_v: vuln.stats,
            guard_activations: vuln.guard_activations,
            empty_rows: vuln.empty_rows,
            table_cached: table.is_cached(),
        },
        dein: gin.dead_end,
        qin: gin.small_reach,
        deout: gout.dead_end,
        qout: gout.small_reach,
        degcc: vuln.dead_end,
        qgcc: vuln.small_reach,
    };
    report.check_invariants()?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heuristics::{ConstantHeuristic, Swapped, TanhHeuristic};
    use approx::assert_relative_eq;

    fn cfg() -> FixedPointConfig {
        FixedPointConfig::default()
    }

    #[test]
    fn gcc_examples() {
        let s = solve_gcc(&DegreePmf::point_mass(3), &cfg()).unwrap();
        assert_eq!(s.q, 0.0);
        assert_eq!(s.gcc, 1.0);
        let s = solve_gcc(&DegreePmf::point_mass(1), &cfg()).unwrap();
        assert_eq!(s.q, 1.0);
        assert_eq!(s.gcc, 0.0);
    }

    // Classical mean-2 Poisson giant component: least positive root of
    // S = 1 − exp(−2S), computed to 40 digits.
    #[test]
    fn gcc_poisson_oracle() {
        let pmf = DegreePmf::poisson(2.0, 60).unwrap();
        let s = solve_gcc(&pmf, &cfg()).unwrap();
        assert!(
            (s.gcc - 0.796_812_130_020_02).abs() < 1e-9,
            "gcc = {}",
            s.gcc
        );
        assert!(s.stats.residual <= 1e-12);
    }

    #[test]
    fn config_validation() {
        let bad = FixedPointConfig {
            tolerance: 0.0,
            ..cfg()
        };
        assert!(matches!(
            solve_gcc(&DegreePmf::point_mass(3), &bad),
            Err(Error::InvalidParameter(_))
        ));
        let bad = FixedPointConfig {
            damping: 0.0,
            ..cfg()
        };
        assert!(bad.validate().is_err());
        let bad = FixedPointConfig {
            max_iterations: 0,
            ..cfg()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn convergence_failure_reports_residual() {
        let tight = FixedPointConfig {
            max_iterations: 2,
            ..cfg()
        };
        let pmf = DegreePmf::poisson(2.0, 60).unwrap();
        match solve_gcc(&pmf, &tight) {
            Err(Error::Convergence {
                stage,
                iterations,
                residual,
            }) => {
                assert_eq!(stage, "solve_gcc");
                assert_eq!(iterations, 2);
                assert!(residual > 0.0);
            }
            other => panic!("expected convergence failure, got {other:?}"),
        }
    }

    #[test]
    fn forwarding_everywhere_reproduces_gcc() {
        let pmf = DegreePmf::power_law(2.3, 300).unwrap();
        let g = solve_gcc(&pmf, &cfg()).unwrap();
        let ones = ConstantHeuristic(1.0);
        let gin = solve_gin(&pmf, &ones, &cfg()).unwrap();
        let gout = solve_gout(&pmf, &ones, &cfg()).unwrap();
        for &d in &gin.dead_end[1..] {
            assert!((d - g.q).abs() < 1e-11);
        }
        assert!((gin.fraction - g.gcc).abs() < 1e-11);
        assert!((gout.fraction - g.gcc).abs() < 1e-11);
    }

    #[test]
    fn forwarding_nowhere_gives_nothing() {
        let pmf = DegreePmf::power_law(2.3, 300).unwrap();
        let zeros = ConstantHeuristic(0.0);
        let gin = solve_gin(&pmf, &zeros, &cfg()).unwrap();
        assert!(gin.dead_end.iter().all(|&d| d == 1.0));
        assert_eq!(gin.fraction, 0.0);
        let gout = solve_gout(&pmf, &zeros, &cfg()).unwrap();
        assert_eq!(gout.fraction, 0.0);
        // nothing immunized: the vulnerable subgraph is the whole graph
        let v = solve_gcc_v(&pmf, &zeros, &gout, &cfg()).unwrap();
        let g = solve_gcc(&pmf, &cfg()).unwrap();
        assert!((v.gcc_v - g.gcc).abs() < 1e-11, "{} vs {}", v.gcc_v, g.gcc);
    }

    #[test]
    fn regular_graph_fully_immunized_is_invulnerable() {
        let pmf = DegreePmf::point_mass(3);
        let ones = ConstantHeuristic(1.0);
        let gout = solve_gout(&pmf, &ones, &cfg()).unwrap();
        assert_eq!(gout.dead_end[3], 0.0);
        let v = solve_gcc_v(&pmf, &ones, &gout, &cfg()).unwrap();
        assert_eq!(v.gcc_v, 0.0);
        let report = analyze(&pmf, &ones, &cfg()).unwrap();
        assert_relative_eq!(report.spread, 1.0, epsilon = 1e-12);
        assert_relative_eq!(report.vulnerability, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn below_transition_is_an_error() {
        let h = TanhHeuristic::new(1.0).unwrap();
        assert!(matches!(
            analyze(&DegreePmf::point_mass(1), &h, &cfg()),
            Err(Error::BelowTransition(_))
        ));
        // subcritical power law: iteration alone would stall just above zero
        let sub = DegreePmf::power_law(3.5, 500).unwrap();
        let g = solve_gcc(&sub, &cfg()).unwrap();
        assert_eq!((g.q, g.gcc), (1.0, 0.0));
        assert!(matches!(
            analyze(&sub, &h, &cfg()),
            Err(Error::BelowTransition(_))
        ));
        assert!(matches!(
            expected_spread(0.1, 0.1, 0.0),
            Err(Error::BelowTransition(_))
        ));
        assert!(matches!(
            expected_vulnerability(0.1, 0.0, 0.0),
            Err(Error::BelowTransition(_))
        ));
    }

    #[test]
    fn spread_and_vulnerability_formulas() {
        assert_eq!(expected_spread(0.7, 0.7, 0.7).unwrap(), 1.0);
        assert_eq!(expected_spread(0.0, 0.3, 0.7).unwrap(), 0.0);
        assert_relative_eq!(
            expected_spread(0.9, 0.1, 1.0).unwrap(),
            0.09,
            epsilon = 1e-15
        );
        assert_eq!(expected_vulnerability(0.0, 0.8, 0.3).unwrap(), 1.0);
        assert_eq!(expected_vulnerability(0.8, 0.8, 0.0).unwrap(), 0.0);
        assert_eq!(expected_vulnerability(0.8, 0.8, 0.8).unwrap(), 1.0);
    }

    #[test]
    fn swapping_heuristic_arguments_swaps_in_and_out() {
        let pmf = DegreePmf::power_law(2.2, 400).unwrap();
        let h = TanhHeuristic::new(0.7).unwrap();
        let sw = Swapped(h);
        let gin = solve_gin(&pmf, &h, &cfg()).unwrap();
        let gout_sw = solve_gout(&pmf, &sw, &cfg()).unwrap();
        assert_eq!(gin.dead_end, gout_sw.dead_end);
        assert_eq!(gin.fraction, gout_sw.fraction);
        let gout = solve_gout(&pmf, &h, &cfg()).unwrap();
        let gin_sw = solve_gin(&pmf, &sw, &cfg()).unwrap();
        assert_eq!(gout.fraction, gin_sw.fraction);
    }

    #[test]
    fn uncached_table_matches_cached() {
        let pmf = DegreePmf::power_law(2.4, 200).unwrap();
        let h = TanhHeuristic::new(1.0).unwrap();
        let cached = analyze(&pmf, &h, &cfg()).unwrap();
        let lazy_cfg = FixedPointConfig {
            table_budget_bytes: 0,
            ..cfg()
        };
        let lazy = analyze(&pmf, &h, &lazy_cfg).unwrap();
        assert!(cached.diagnostics.table_cached);
        assert!(!lazy.diagnostics.table_cached);
        assert_eq!(cached.gin, lazy.gin);
        assert_eq!(cached.gout, lazy.gout);
        assert_eq!(cached.gcc_v, lazy.gcc_v);
    }

    #[test]
    fn solutions_are_self_consistent() {
        let pmf = DegreePmf::power_law(2.1, 500).unwrap();
        let h = TanhHeuristic::new(1.0).unwrap();
        let report = analyze(&pmf, &h, &cfg()).unwrap();
        report.check_invariants().unwrap();
        // substitute δin back into its defining sum, degree by degree
        let w = pmf.edge_end_weights().unwrap();
        for a in 0..=pmf.dmax() {
            let rhs: f64 = (1..=pmf.dmax())
                .map(|b| {
                    let hv = h.prob(a as u32, b as u32);
                    (1.0 - hv + hv * report.dein[b].powi(b as i32 - 1)) * w[b]
                })
                .sum();
            assert!((rhs - report.dein[a]).abs() < 1e-11, "a={a}");
        }
        for s in [
            report.diagnostics.gcc,
            report.diagnostics.gin,
            report.diagnostics.gout,
            report.diagnostics.gcc_v,
        ] {
            assert!(s.max_decrease <= 1e-15, "{s:?}");
        }
    }

    #[test]
    fn damping_reaches_the_same_fixed_point() {
        let pmf = DegreePmf::power_law(2.5, 300).unwrap();
        let h = TanhHeuristic::new(0.4).unwrap();
        let plain = analyze(&pmf, &h, &cfg()).unwrap();
        let damped = analyze(
            &pmf,
            &h,
            &FixedPointConfig {
                damping: 0.6,
                ..cfg()
            },
        )
        .unwrap();
        assert!((plain.gcc_v - damped.gcc_v).abs() < 1e-10);
        assert!(damped.diagnostics.gcc_v.iterations > plain.diagnostics.gcc_v.iterations);
    }

    #[test]
    fn json_hides_vectors_unless_full() {
        let pmf = DegreePmf::power_law(2.2, 50).unwrap();
        let report = analyze(&pmf, &TanhHeuristic::new(1.0).unwrap(), &cfg()).unwrap();
        let brief = report.to_json(false);
        assert!(brief.get("dein").is_none());
        assert!(brief.get("spread").is_some());
        assert!(brief["diagnostics"]["gin"]["iterations"].is_u64());
        let full = report.to_json(true);
        assert_eq!(full["degcc"].as_array().unwrap().len(), 51);
    }
}
