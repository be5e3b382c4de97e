//! Configuration-model multigraphs.
//!
//! Degrees are drawn i.i.d. from a [`DegreePmf`]; sequences with an odd sum
//! are thrown away whole and redrawn. Stubs are then matched uniformly at
//! random. Parallel edges and self-loops are kept as generated.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::degree_dist::DegreePmf;
use crate::error::{Error, Result};

/// Maximum number of whole-sequence redraws before giving up on parity.
pub const MAX_PARITY_RESAMPLES: usize = 10_000;

pub type NodeId = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence(Vec<u32>);

impl DegreeSequence {
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        let seq = Self(degrees);
        if !seq.total().is_multiple_of(2) {
            return Err(Error::InvariantViolation(format!(
                "degree sequence sums to odd total {}",
                seq.total()
            )));
        }
        Ok(seq)
    }

    pub fn degrees(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&d| d as u64).sum()
    }
}

/// One side of an undirected edge as seen from a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Incidence {
    pub neighbor: NodeId,
    pub edge: u32,
    /// True when this node is the first endpoint of `edge`.
    pub outgoing_is_forward: bool,
}

/// Undirected multigraph with dense 0-based node ids.
///
/// `degree` is the structural degree (a self-loop counts twice). The
/// incidence lists exclude self-loops, which never carry traffic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(NodeId, NodeId)>,
    degree: Vec<u32>,
    offsets: Vec<usize>,
    incidences: Vec<Incidence>,
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<(NodeId, NodeId)>) -> Result<Self> {
        if n > NodeId::MAX as usize {
            return Err(Error::invalid(format!(
                "node count {n} exceeds the u32 id space"
            )));
        }
        if edges.len() > u32::MAX as usize {
            return Err(Error::invalid("too many edges"));
        }
        let mut degree = vec![0u32; n];
        let mut loopless = vec![0usize; n];
        for &(u, v) in &edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::invalid(format!(
                    "edge ({u},{v}) references a node outside 0..{n}"
                )));
            }
            degree[u as usize] += 1;
            degree[v as usize] += 1;
            if u != v {
                loopless[u as usize] += 1;
                loopless[v as usize] += 1;
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for &c in &loopless {
            offsets.push(offsets.last().unwrap() + c);
        }
        let mut fill = offsets[..n].to_vec();
        let placeholder = Incidence {
            neighbor: 0,
            edge: 0,
            outgoing_is_forward: true,
        };
        let mut incidences = vec![placeholder; offsets[n]];
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u == v {
                continue;
            }
            incidences[fill[u as usize]] = Incidence {
                neighbor: v,
                edge: e as u32,
                outgoing_is_forward: true,
            };
            fill[u as usize] += 1;
            incidences[fill[v as usize]] = Incidence {
                neighbor: u,
                edge: e as u32,
                outgoing_is_forward: false,
            };
            fill[v as usize] += 1;
        }
        Ok(Self {
            n,
            edges,
            degree,
            offsets,
            incidences,
        })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn degree(&self, u: usize) -> u32 {
        self.degree[u]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degree
    }

    pub fn max_degree(&self) -> u32 {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    /// Non-loop incidences of `u`, one per parallel edge copy.
    pub fn incidences(&self, u: usize) -> &[Incidence] {
        &self.incidences[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.edges[e];
        u == v
    }

    pub fn loopless_edge_count(&self) -> usize {
        self.incidences.len() / 2
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(16 * (self.edges.len() + 1));
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn write_edge_list(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_edge_list()).map_err(|e| Error::io(path, e))
    }

    pub fn read_edge_list(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::parse_edge_list(file, path)
    }

    /// Parses `n m` followed by `m` lines of `u v`. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn parse_edge_list<R: Read>(reader: R, origin: &Path) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, line) in BufReader::new(reader).lines().enumerate() {
            let lineno = idx + 1;
            let line = line.map_err(|e| Error::io(origin, e))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(Error::parse(origin, lineno, "expected two integers"));
            };
            let a: u64 = a
                .parse()
                .map_err(|_| Error::parse(origin, lineno, format!("bad integer `{a}`")))?;
            let b: u64 = b
                .parse()
                .map_err(|_| Error::parse(origin, lineno, format!("bad integer `{b}`")))?;
            match header {
                None => header = Some((a as usize, b as usize)),
                Some((n, _)) => {
                    if a as usize >= n || b as usize >= n {
                        return Err(Error::parse(
                            origin,
                            lineno,
                            format!("node id out of range 0..{n}"),
                        ));
                    }
                    edges.push((a as NodeId, b as NodeId));
                }
            }
        }
        let (n, m) = header
            .ok_or_else(|| Error::NoData(format!("{}: empty edge list", origin.display())))?;
        if edges.len() != m {
            return Err(Error::parse(
                origin,
                0,
                format!("header announces {m} edges but {} were listed", edges.len()),
            ));
        }
        Self::new(n, edges)
    }
}

/// Draws `n` i.i.d. degrees, redrawing the whole sequence until its sum is even.
pub fn sample_degree_sequence<R: Rng + ?Sized>(
    pmf: &DegreePmf,
    n: usize,
    rng: &mut R,
) -> Result<DegreeSequence> {
    if n < 2 {
        return Err(Error::invalid(format!("need at least 2 nodes, got {n}")));
    }
    let support_all_odd = pmf
        .probs()
        .iter()
        .enumerate()
        .all(|(a, &p)| p == 0.0 || a % 2 == 1);
    if support_all_odd && n % 2 == 1 {
        return Err(Error::PathologicalDistribution(format!(
            "every degree in the support is odd and n={n} is odd; the degree sum can never be even"
        )));
    }
    let mut degrees = vec![0u32; n];
    for _ in 0..MAX_PARITY_RESAMPLES {
        let mut total = 0u64;
        for d in degrees.iter_mut() {
            *d = pmf.sample(rng) as u32;
            total += *d as u64;
        }
        if total.is_multiple_of(2) {
            return Ok(DegreeSequence(degrees));
        }
    }
    Err(Error::PathologicalDistribution(format!(
        "degree sum stayed odd for {MAX_PARITY_RESAMPLES} consecutive sequences"
    )))
}

/// Uniform perfect matching of the labeled stubs, paired after a shuffle.
pub fn configuration_model<R: Rng + ?Sized>(
    seq: &DegreeSequence,
    rng: &mut R,
) -> Result<Multigraph> {
    if !seq.total().is_multiple_of(2) {
        return Err(Error::InvariantViolation("odd degree sum".into()));
    }
    let mut stubs: Vec<NodeId> = Vec::with_capacity(seq.total() as usize);
    for (u, &d) in seq.degrees().iter().enumerate() {
        stubs.extend(std::iter::repeat_n(u as NodeId, d as usize));
    }
    stubs.shuffle(rng);
    let edges = stubs
        .chunks_exact(2)
        .map(|pair| (pair[0].min(pair[1]), pair[0].max(pair[1])))
        .collect();
    Multigraph::new(seq.len(), edges)
}

/// Degree sequence plus configuration model in one step.
pub fn generate<R: Rng + ?Sized>(pmf: &DegreePmf, n: usize, rng: &mut R) -> Result<Multigraph> {
    let seq = sample_degree_sequence(pmf, n, rng)?;
    configuration_model(&seq, rng)
}
