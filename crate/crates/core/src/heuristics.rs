//! Forwarding heuristics `h(a, b)`: the probability that a node of degree
//! `a` holding the vaccine passes it to a neighbor of degree `b`.
//!
//! Also hosts the classical baselines (random, degree-threshold and
//! acquaintance immunization) that select nodes up front.

use rand::seq::index;
use rand::Rng;

use crate::components::NodeSet;
use crate::error::{Error, Result};
use crate::graph_gen::Multigraph;

pub trait Heuristic: Send + Sync {
    /// Forwarding probability from a degree-`a` sender to a degree-`b` receiver.
    fn prob(&self, a: u32, b: u32) -> f64;

    /// Writes `h(a, b)` for `b = 0..out.len()` into `out`.
    fn fill_row(&self, a: u32, out: &mut [f64]) {
        for (b, o) in out.iter_mut().enumerate() {
            *o = self.prob(a, b as u32);
        }
    }
}

impl<H: Heuristic + ?Sized> Heuristic for &H {
    fn prob(&self, a: u32, b: u32) -> f64 {
        (**self).prob(a, b)
    }

    fn fill_row(&self, a: u32, out: &mut [f64]) {
        (**self).fill_row(a, out)
    }
}

/// Degree-biased forwarding rule:
///
/// * `0` if either degree is 0, or if the receiver has degree 1;
/// * `1` if `a ≤ 2 ≤ b`;
/// * `tanh((b − 1) / (a − 2)^alpha)` otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TanhHeuristic {
    alpha: f64,
}

impl TanhHeuristic {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::invalid(format!(
                "alpha must be finite and >= 0, got {alpha}"
            )));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl Heuristic for TanhHeuristic {
    fn prob(&self, a: u32, b: u32) -> f64 {
        if a == 0 || b == 0 || b == 1 {
            return 0.0;
        }
        if a <= 2 {
            // b ≥ 2 here
            return 1.0;
        }
        // a ≥ 3 keeps the base of the power at least 1
        let scale = f64::from(a - 2).powf(self.alpha);
        (f64::from(b - 1) / scale).tanh()
    }

    fn fill_row(&self, a: u32, out: &mut [f64]) {
        if a <= 2 {
            for (b, o) in out.iter_mut().enumerate() {
                *o = if a > 0 && b >= 2 { 1.0 } else { 0.0 };
            }
            return;
        }
        let scale = f64::from(a - 2).powf(self.alpha);
        for (b, o) in out.iter_mut().enumerate() {
            *o = if b < 2 {
                0.0
            } else {
                ((b - 1) as f64 / scale).tanh()
            };
        }
    }
}

/// `h ≡ p` for every pair of degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantHeuristic(pub f64);

impl Heuristic for ConstantHeuristic {
    fn prob(&self, _a: u32, _b: u32) -> f64 {
        self.0
    }
}

/// `h'(a, b) = h(b, a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Swapped<H>(pub H);

impl<H: Heuristic> Heuristic for Swapped<H> {
    fn prob(&self, a: u32, b: u32) -> f64 {
        self.0.prob(b, a)
    }
}

fn check_fraction(name: &str, f: f64) -> Result<()> {
    if (0.0..=1.0).contains(&f) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must lie in [0,1], got {f}")))
    }
}

/// `⌊fraction·n⌋` distinct nodes chosen uniformly.
pub fn random_immunization<R: Rng + ?Sized>(
    graph: &Multigraph,
    fraction: f64,
    rng: &mut R,
) -> Result<NodeSet> {
    check_fraction("fraction", fraction)?;
    let n = graph.node_count();
    let k = ((fraction * n as f64).floor() as usize).min(n);
    Ok(NodeSet::from_nodes(n, index::sample(rng, n, k)))
}

/// Every node whose structural degree exceeds `threshold`.
pub fn degree_threshold_immunization(graph: &Multigraph, threshold: u32) -> NodeSet {
    let n = graph.node_count();
    NodeSet::from_nodes(n, (0..n).filter(|&u| graph.degree(u) > threshold))
}

/// Samples `⌊node_fraction·n⌋` nodes and, for each, immunizes
/// `⌈neighbor_fraction·deg⌉` of its distinct neighbors chosen uniformly
/// (capped at the number of distinct neighbors other than itself).
pub fn acquaintance_immunization<R: Rng + ?Sized>(
    graph: &Multigraph,
    node_fraction: f64,
    neighbor_fraction: f64,
    rng: &mut R,
) -> Result<NodeSet> {
    check_fraction("node_fraction", node_fraction)?;
    check_fraction("neighbor_fraction", neighbor_fraction)?;
    let n = graph.node_count();
    let k = ((node_fraction * n as f64).floor() as usize).min(n);
    let mut immunized = NodeSet::empty(n);
    for u in index::sample(rng, n, k) {
        let mut neighbors: Vec<usize> = graph
            .incidences(u)
            .iter()
            .map(|i| i.neighbor as usize)
            .collect();
        neighbors.sort_unstable();
        neighbors.dedup();
        let want = (neighbor_fraction * f64::from(graph.degree(u))).ceil() as usize;
        let take = want.min(neighbors.len());
        for i in index::sample(rng, neighbors.len(), take) {
            immunized.insert(neighbors[i]);
        }
    }
    Ok(immunized)
}
