//! Discrete degree distributions: construction, summary statistics, the
//! giant-component phase criterion, and inverse-CDF sampling.
//!
//! A [`DegreePmf`] covers degrees `0..=dmax`. All constructors renormalize over
//! the truncated support, so every sum taken over a PMF is finite and the
//! masses add to one.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use rand::Rng;

use crate::error::{Error, Result};

/// Mass tolerance used by the normalization invariants.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct DegreePmf {
    probs: Vec<f64>,
    cdf: Vec<f64>,
}

/// Result of the giant-component criterion: the expected number of further
/// neighbors of a node reached along an edge, and whether it exceeds one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseCriterion {
    pub branching_factor: f64,
    pub above_transition: bool,
}

impl DegreePmf {
    /// Builds a PMF from non-negative weights over degrees `0..weights.len()`,
    /// normalizing them to unit mass.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::invalid(
                "a degree distribution needs at least one degree",
            ));
        }
        if let Some((a, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !w.is_finite() || **w < 0.0)
        {
            return Err(Error::invalid(format!("weight of degree {a} is {w}")));
        }
        // small terms first
        let total: f64 = weights.iter().rev().sum();
        if total <= 0.0 {
            return Err(Error::invalid("degree weights sum to zero"));
        }
        let probs: Vec<f64> = weights.into_iter().map(|w| w / total).collect();
        Ok(Self::with_cdf(probs))
    }

    fn with_cdf(probs: Vec<f64>) -> Self {
        let mut cdf = Vec::with_capacity(probs.len());
        let mut acc = 0.0;
        for &p in &probs {
            acc += p;
            cdf.push(acc);
        }
        // Pin the tail to exactly 1 from the last degree that carries mass, so
        // sampling never lands on a zero-probability degree.
        if let Some(last) = probs.iter().rposition(|&p| p > 0.0) {
            for c in &mut cdf[last..] {
                *c = 1.0;
            }
        }
        Self { probs, cdf }
    }

    /// Power law `p_a ∝ a^(-tau)` on `1..=dmax`, with `p_0 = 0`.
    pub fn power_law(tau: f64, dmax: usize) -> Result<Self> {
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::invalid(format!(
                "power-law exponent must be positive, got {tau}"
            )));
        }
        if dmax < 2 {
            return Err(Error::invalid(format!(
                "dmax must be at least 2, got {dmax}"
            )));
        }
        let mut weights = vec![0.0; dmax + 1];
        for (a, w) in weights.iter_mut().enumerate().skip(1) {
            *w = (a as f64).powf(-tau);
        }
        Self::from_weights(weights)
    }

    /// Poisson distribution with mean `z`, truncated at `dmax` and renormalized.
    pub fn poisson(z: f64, dmax: usize) -> Result<Self> {
        if !(z.is_finite() && z > 0.0) {
            return Err(Error::invalid(format!(
                "Poisson mean must be positive, got {z}"
            )));
        }
        if dmax == 0 {
            return Err(Error::invalid("dmax must be positive"));
        }
        let ln_z = z.ln();
        let mut ln_fact = 0.0;
        let mut weights = Vec::with_capacity(dmax + 1);
        for a in 0..=dmax {
            if a > 0 {
                ln_fact += (a as f64).ln();
            }
            weights.push((a as f64 * ln_z - z - ln_fact).exp());
        }
        Self::from_weights(weights)
    }

    /// All mass on a single degree `k`.
    pub fn point_mass(k: usize) -> Self {
        let mut probs = vec![0.0; k + 1];
        probs[k] = 1.0;
        Self::with_cdf(probs)
    }

    pub fn dmax(&self) -> usize {
        self.probs.len() - 1
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn cdf(&self) -> &[f64] {
        &self.cdf
    }

    /// Probability of degree `a` (zero outside the support).
    pub fn prob(&self, a: usize) -> f64 {
        self.probs.get(a).copied().unwrap_or(0.0)
    }

    /// Mean degree `Σ a·p_a`.
    pub fn mean_degree(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .rev()
            .map(|(a, p)| a as f64 * p)
            .sum()
    }

    /// Degree distribution of the node at the far end of a uniformly chosen
    /// edge: mass `b·p_b / Z` at degree `b`.
    pub fn neighbor_degree_pmf(&self) -> Result<Self> {
        let z = self.positive_mean()?;
        let probs = self
            .probs
            .iter()
            .enumerate()
            .map(|(b, p)| b as f64 * p / z)
            .collect();
        Ok(Self::with_cdf(probs))
    }

    /// Edge-end weights `b·p_b / Z` indexed by degree.
    pub fn edge_end_weights(&self) -> Result<Vec<f64>> {
        Ok(self.neighbor_degree_pmf()?.probs)
    }

    pub fn phase_criterion(&self) -> Result<PhaseCriterion> {
        let z = self.positive_mean()?;
        let branching_factor: f64 = self
            .probs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .map(|(b, p)| (b as f64 - 1.0) * b as f64 * p)
            .sum::<f64>()
            / z;
        Ok(PhaseCriterion {
            branching_factor,
            above_transition: branching_factor > 1.0,
        })
    }

    fn positive_mean(&self) -> Result<f64> {
        let z = self.mean_degree();
        if z > 0.0 {
            Ok(z)
        } else {
            Err(Error::DegenerateDistribution(
                "mean degree is zero; neighbor degrees are undefined".into(),
            ))
        }
    }

    /// Draws a degree by inverse-CDF lookup.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.gen();
        let idx = self.cdf.partition_point(|&c| c <= u);
        idx.min(self.dmax())
    }

    /// Serializes as `# pmf dmax=<d>` followed by one `degree probability`
    /// line per degree.
    pub fn to_text(&self) -> String {
        let mut out = format!("# pmf dmax={}\n", self.dmax());
        for (a, p) in self.probs.iter().enumerate() {
            let _ = writeln!(out, "{a} {p:e}");
        }
        out
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn read_from(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::parse(file, path)
    }

    /// Parses the text format. Degrees not listed get zero mass; values that
    /// do not already sum to one are renormalized.
    pub fn parse<R: Read>(reader: R, origin: &Path) -> Result<Self> {
        let mut dmax: Option<usize> = None;
        let mut probs: Vec<f64> = Vec::new();
        for (idx, line) in BufReader::new(reader).lines().enumerate() {
            let lineno = idx + 1;
            let line = line.map_err(|e| Error::io(origin, e))?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(d) = rest.trim().strip_prefix("pmf dmax=") {
                    let d: usize = d
                        .trim()
                        .parse()
                        .map_err(|_| Error::parse(origin, lineno, "bad dmax in header"))?;
                    dmax = Some(d);
                    probs = vec![0.0; d + 1];
                }
                continue;
            }
            let d = dmax
                .ok_or_else(|| Error::parse(origin, lineno, "missing `# pmf dmax=<d>` header"))?;
            let mut fields = line.split_whitespace();
            let (Some(a), Some(p), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(Error::parse(
                    origin,
                    lineno,
                    "expected `degree probability`",
                ));
            };
            let a: usize = a
                .parse()
                .map_err(|_| Error::parse(origin, lineno, format!("bad degree `{a}`")))?;
            let p: f64 = p
                .parse()
                .map_err(|_| Error::parse(origin, lineno, format!("bad probability `{p}`")))?;
            if a > d {
                return Err(Error::parse(
                    origin,
                    lineno,
                    format!("degree {a} exceeds dmax={d}"),
                ));
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::parse(
                    origin,
                    lineno,
                    format!("probability {p} outside [0,1]"),
                ));
            }
            probs[a] = p;
        }
        if dmax.is_none() {
            return Err(Error::NoData(format!(
                "{}: no `# pmf dmax=<d>` header",
                origin.display()
            )));
        }
        // Already-normalized files are kept verbatim so a dump reads back bit for bit.
        let total: f64 = probs.iter().rev().sum();
        if (total - 1.0).abs() <= NORMALIZATION_TOLERANCE {
            return Ok(Self::with_cdf(probs));
        }
        Self::from_weights(probs)
    }
}
