//! Cylinder-set probabilities `M(C_A)`.
//!
//! `C_A` is the event that the random adjacency matrix has `A` in its
//! top-left corner. Its probability is the integral over `X^n` of
//! `∏_{a_ij = 1} ω(x_i, x_j) ∏_{a_ij = 0} (1 - ω(x_i, x_j))` over `i < j`.
//!
//! Pattern file format: a line with `n`, then `n` rows of `n`
//! space-separated 0/1 entries.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graphon::{Graphon, Sampler, VertexMeasure};
use crate::intervals::{fmt_rational, to_f64, Rational};
use crate::rng::{self, PERMUTATION_STREAM, VERTEX_STREAM};

/// Largest `n · log2 K` evaluated exactly.
pub const EXACT_LOG2_LIMIT: f64 = 24.0;

/// A symmetric 0/1 matrix with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderPattern {
    graph: Graph,
}

impl CylinderPattern {
    pub fn new(entries: &[Vec<u8>]) -> Result<Self> {
        let n = entries.len();
        let mut graph = Graph::empty(n);
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse(format!("pattern row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, &a) in row.iter().enumerate() {
                if a > 1 {
                    return Err(Error::Parse(format!("pattern entry ({i},{j}) is not 0/1")));
                }
                if a != entries[j][i] {
                    return Err(Error::Parse(format!("pattern not symmetric at ({i},{j})")));
                }
                if i == j && a == 1 {
                    return Err(Error::Parse(format!("pattern has a nonzero diagonal at {i}")));
                }
                if i < j && a == 1 {
                    graph.add_edge(i, j);
                }
            }
        }
        Ok(Self { graph })
    }

    pub fn from_graph(graph: Graph) -> Self {
        Self { graph }
    }

    /// All `2^(n(n-1)/2)` patterns of order `n`, bit `t` of the code being
    /// the `t`-th upper-triangle pair in row-major order.
    pub fn all(n: usize) -> impl Iterator<Item = Self> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        (0u64..1 << pairs.len()).map(move |code| {
            let mut g = Graph::empty(n);
            for (t, &(i, j)) in pairs.iter().enumerate() {
                if code >> t & 1 == 1 {
                    g.add_edge(i, j);
                }
            }
            Self { graph: g }
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty pattern file".into()))?
            .parse()
            .map_err(|_| Error::Parse("bad pattern order".into()))?;
        let rows = lines
            .map(|l| l.split_whitespace().map(|t| t.parse::<u8>().map_err(|_| Error::Parse(format!("bad entry `{t}`")))).collect())
            .collect::<Result<Vec<Vec<u8>>>>()?;
        if rows.len() != n {
            return Err(Error::Parse(format!("pattern declares order {n} but has {} rows", rows.len())));
        }
        Self::new(&rows)
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        i != j && self.graph.has_edge(i, j)
    }

    pub fn ones(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn zeros(&self) -> usize {
        self.n() * self.n().saturating_sub(1) / 2 - self.ones()
    }

    /// `P A Pᵀ` for the permutation sending `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut g = Graph::empty(self.n());
        for (i, j) in self.graph.edges() {
            g.add_edge(perm[i], perm[j]);
        }
        Self { graph: g }
    }
}

impl fmt::Display for CylinderPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n())?;
        for i in 0..self.n() {
            let row: Vec<&str> = (0..self.n()).map(|j| if self.get(i, j) { "1" } else { "0" }).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    MonteCarlo { samples: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CylinderEstimate {
    pub value: f64,
    /// The exact value when `method` is exact.
    #[serde(serialize_with = "serialize_exact")]
    pub exact: Option<Rational>,
    pub std_error: f64,
    pub method: Method,
    /// Monte-Carlo integrand was constant over all samples.
    pub degenerate: bool,
}

fn serialize_exact<S: serde::Serializer>(x: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(r) => s.serialize_str(&fmt_rational(r)),
        None => s.serialize_none(),
    }
}

impl CylinderEstimate {
    fn exact(value: Rational) -> Self {
        Self { value: to_f64(&value), exact: Some(value), std_error: 0.0, method: Method::Exact, degenerate: false }
    }
}

impl fmt::Display for CylinderEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.exact, &self.method) {
            (Some(r), _) => write!(f, "{} ({})", fmt_rational(r), self.value),
            (None, Method::MonteCarlo { samples }) => {
                write!(f, "{} ± {} ({samples} samples{})", self.value, self.std_error, if self.degenerate { ", degenerate" } else { "" })
            }
            (None, Method::Exact) => write!(f, "{}", self.value),
        }
    }
}

/// Exact `M(C_A)` for constant and step graphons.
pub fn cylinder_exact(g: &Graphon, a: &CylinderPattern) -> Result<CylinderEstimate> {
    let n = a.n();
    match g {
        Graphon::Constant(p) => {
            let q = Rational::one() - p;
            Ok(CylinderEstimate::exact(num_traits::pow(p.clone(), a.ones()) * num_traits::pow(q, a.zeros())))
        }
        Graphon::Step(s) => {
            let k = s.k();
            if n as f64 * (k as f64).log2() > EXACT_LOG2_LIMIT {
                return Err(Error::Complexity(format!("{k}^{n} block assignments")));
            }
            let pairs: Vec<(usize, usize, bool)> =
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j, a.get(i, j)))).collect();
            let one = Rational::one();
            let factor: Vec<Vec<[Rational; 2]>> = s
                .values()
                .iter()
                .map(|row| row.iter().map(|v| [&one - v, v.clone()]).collect())
                .collect();
            let mut total = Rational::zero();
            let mut blocks = vec![0usize; n];
            loop {
                let mut term: Rational = blocks.iter().map(|&b| s.masses()[b].clone()).product();
                for &(i, j, edge) in &pairs {
                    if term.is_zero() {
                        break;
                    }
                    term *= &factor[blocks[i]][blocks[j]][edge as usize];
                }
                total += term;
                let Some(pos) = blocks.iter().rposition(|&b| b + 1 < k) else { break };
                blocks[pos] += 1;
                blocks[pos + 1..].iter_mut().for_each(|b| *b = 0);
            }
            Ok(CylinderEstimate::exact(total))
        }
        _ => Err(Error::Unsupported(format!("exact cylinder measure for {}", g.describe()))),
    }
}

/// Monte-Carlo `M(C_A)`: the mean of the integrand over `samples` vertex
/// tuples drawn from `m`, with its standard error.
pub fn cylinder_mc(g: &Graphon, m: &VertexMeasure, a: &CylinderPattern, samples: usize, seed: u64) -> Result<CylinderEstimate> {
    if samples == 0 {
        return Err(Error::Precondition("at least one sample is required".into()));
    }
    let mut sampler = Sampler::new(g, m)?;
    let mut rng = rng::stream(seed, VERTEX_STREAM);
    let n = a.n();
    let pairs: Vec<(usize, usize, bool)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j, a.get(i, j)))).collect();
    let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
    let mut first = None;
    let mut constant = true;
    for _ in 0..samples {
        let vs = sampler.vertices(n, &mut rng);
        sampler.prepare(&vs)?;
        let mut x = 1.0;
        for &(i, j, edge) in &pairs {
            let w = sampler.weight(vs[i], vs[j]);
            x *= if edge { w } else { 1.0 - w };
        }
        sum += x;
        sum_sq += x * x;
        constant &= *first.get_or_insert(x) == x;
    }
    let count = samples as f64;
    let mean = sum / count;
    let var = if samples > 1 { ((sum_sq - count * mean * mean) / (count - 1.0)).max(0.0) } else { 0.0 };
    Ok(CylinderEstimate {
        value: mean,
        exact: None,
        std_error: (var / count).sqrt(),
        method: Method::MonteCarlo { samples },
        degenerate: constant,
    })
}

/// Whether `M(C_A) = M(C_{PAPᵀ})` exactly for the identity and
/// `permutations` random permutations `P`.
pub fn permutation_invariance_check(g: &Graphon, a: &CylinderPattern, permutations: usize, seed: u64) -> Result<bool> {
    let base = cylinder_exact(g, a)?.exact;
    let mut rng = rng::stream(seed, PERMUTATION_STREAM);
    let n = a.n();
    let mut perm: Vec<usize> = (0..n).collect();
    for round in 0..=permutations {
        if round > 0 {
            for i in (1..n).rev() {
                let j = (rng::uniform(&mut rng) * (i + 1) as f64) as usize;
                perm.swap(i, j.min(i));
            }
        }
        if cylinder_exact(g, &a.permuted(&perm))?.exact != base {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every permutation of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        out.push(perm.clone());
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { return out };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("successor exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}
