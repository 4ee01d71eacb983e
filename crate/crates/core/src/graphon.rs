//! Generalized graphs `(X, m, ω)` and the two-step random-graph construction.
//!
//! A sample first draws vertices `x_1..x_n` independently from `m`, then
//! joins each pair `i < j` independently with probability `ω(x_i, x_j)`.
//! Vertices come from ChaCha stream [`VERTEX_STREAM`] and edges from
//! [`EDGE_STREAM`] of the same seed. An edge uniform is consumed only for
//! pairs with `0 < ω < 1`, so deterministic graphons draw no edge randomness.
//!
//! Real coordinates are rounded to multiples of `2^-40` as soon as they are
//! drawn, and indicator adjacency is then decided exactly on those dyadic
//! rationals.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::intervals::{fmt_rational, int, parse_rational, to_f64, DyadicTable, Rational};
use crate::ksfree_graph::{BoxTable, PlaneGraphModel};
use crate::line_graph::{LineGraphModel, LineMode};
use crate::rng::{self, Stream, EDGE_STREAM, TUPLE_STREAM, VERTEX_STREAM};

/// Fractional bits of sampled coordinates.
pub const COORD_BITS: u32 = 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexMeasure {
    Uniform { lo: Rational, hi: Rational },
    Gaussian { mean: Rational, sigma: Rational },
    DiscreteBlocks(Vec<Rational>),
}

impl VertexMeasure {
    pub fn uniform(lo: Rational, hi: Rational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::Spec(format!("uniform needs lo < hi, got {} and {}", fmt_rational(&lo), fmt_rational(&hi))));
        }
        Ok(Self::Uniform { lo, hi })
    }

    pub fn gaussian(mean: Rational, sigma: Rational) -> Result<Self> {
        if !sigma.is_positive() {
            return Err(Error::Spec(format!("gaussian needs sigma > 0, got {}", fmt_rational(&sigma))));
        }
        Ok(Self::Gaussian { mean, sigma })
    }

    pub fn blocks(masses: Vec<Rational>) -> Result<Self> {
        check_masses(&masses)?;
        Ok(Self::DiscreteBlocks(masses))
    }

    /// `gaussian(0, 5)`.
    pub fn default_line() -> Self {
        Self::Gaussian { mean: Rational::zero(), sigma: int(5) }
    }

    fn is_real(&self) -> bool {
        !matches!(self, Self::DiscreteBlocks(_))
    }

    fn draw(&self, rng: &mut Stream, cumulative: &[f64]) -> Vertex {
        match self {
            Self::Uniform { lo, hi } => {
                let (lo, hi) = (to_f64(lo), to_f64(hi));
                Vertex::dyadic(lo + (hi - lo) * rng::uniform(rng))
            }
            Self::Gaussian { mean, sigma } => Vertex::dyadic(to_f64(mean) + to_f64(sigma) * rng::gaussian(rng)),
            Self::DiscreteBlocks(_) => {
                let u = rng::uniform(rng);
                let b = cumulative.partition_point(|&c| c <= u).min(cumulative.len() - 1);
                Vertex::Block(b)
            }
        }
    }

    fn cumulative(&self) -> Vec<f64> {
        match self {
            Self::DiscreteBlocks(m) => m
                .iter()
                .scan(Rational::zero(), |acc, x| {
                    *acc += x;
                    Some(to_f64(acc))
                })
                .collect(),
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for VertexMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Uniform { lo, hi } => write!(f, "uniform:{}:{}", fmt_rational(lo), fmt_rational(hi)),
            Self::Gaussian { mean, sigma } => write!(f, "gaussian:{}:{}", fmt_rational(mean), fmt_rational(sigma)),
            Self::DiscreteBlocks(m) => {
                write!(f, "blocks:{}", m.iter().map(fmt_rational).collect::<Vec<_>>().join(","))
            }
        }
    }
}

/// Parses `uniform:LO:HI`, `gaussian:MEAN:SIGMA` or `blocks:M1,M2,...`.
impl FromStr for VertexMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts[..] {
            ["uniform", lo, hi] => Self::uniform(parse_number(lo)?, parse_number(hi)?),
            ["gaussian", mean, sigma] => Self::gaussian(parse_number(mean)?, parse_number(sigma)?),
            ["blocks", masses] => Self::blocks(masses.split(',').map(parse_number).collect::<Result<_>>()?),
            _ => Err(Error::Spec(format!("bad vertex measure `{s}`"))),
        }
    }
}

/// Exact value of `p/q`, an integer, or a finite decimal such as `0.25`.
pub fn parse_number(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.contains('/') || !(s.contains('.') || s.contains('e') || s.contains('E')) {
        return parse_rational(s);
    }
    let bad = || Error::Parse(format!("bad number `{s}`"));
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let negative = whole.starts_with('-');
    let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let mut value = Rational::from_integer(digits.parse::<BigInt>().map_err(|_| bad())?);
    let scale = exp - frac.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    value *= if scale >= 0 { num_traits::pow(ten, scale as usize) } else { num_traits::pow(ten, (-scale) as usize).recip() };
    Ok(if negative { -value } else { value })
}

fn check_masses(masses: &[Rational]) -> Result<()> {
    if masses.is_empty() || masses.iter().any(|m| m.is_negative()) {
        return Err(Error::Spec("block masses must be nonnegative and nonempty".into()));
    }
    if masses.iter().sum::<Rational>() != Rational::one() {
        return Err(Error::Spec("block masses must sum to exactly 1".into()));
    }
    Ok(())
}

fn is_probability(p: &Rational) -> bool {
    !p.is_negative() && *p <= Rational::one()
}

/// A step graphon: blocks with rational masses and a symmetric value matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepGraphon {
    masses: Vec<Rational>,
    values: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct StepFile {
    masses: Vec<Value>,
    values: Vec<Vec<Value>>,
}

fn json_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_number(s),
        Value::Number(n) => parse_number(&n.to_string()),
        _ => Err(Error::Spec(format!("expected a rational, got {v}"))),
    }
}

impl StepGraphon {
    #[allow(clippy::needless_range_loop)]
    pub fn new(masses: Vec<Rational>, values: Vec<Vec<Rational>>) -> Result<Self> {
        check_masses(&masses)?;
        let k = masses.len();
        if values.len() != k || values.iter().any(|row| row.len() != k) {
            return Err(Error::Spec(format!("values must be a {k}x{k} matrix")));
        }
        for i in 0..k {
            for j in 0..k {
                if !is_probability(&values[i][j]) {
                    return Err(Error::Spec(format!("value at ({i},{j}) outside [0,1]")));
                }
                if values[i][j] != values[j][i] {
                    return Err(Error::Spec(format!("values not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(Self { masses, values })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: StepFile = serde_json::from_str(text).map_err(|e| Error::Spec(format!("step file: {e}")))?;
        let masses = file.masses.iter().map(json_rational).collect::<Result<_>>()?;
        let values = file.values.iter().map(|row| row.iter().map(json_rational).collect()).collect::<Result<_>>()?;
        Self::new(masses, values)
    }

    pub fn to_json(&self) -> String {
        let strs = |v: &[Rational]| v.iter().map(|x| Value::String(fmt_rational(x))).collect();
        let file = StepFile { masses: strs(&self.masses), values: self.values.iter().map(|r| strs(r)).collect() };
        serde_json::to_string(&file).expect("serializable")
    }

    pub fn k(&self) -> usize {
        self.masses.len()
    }

    pub fn masses(&self) -> &[Rational] {
        &self.masses
    }

    pub fn values(&self) -> &[Vec<Rational>] {
        &self.values
    }

    /// Whether samples can contain a `K_s`: some blocks of positive mass,
    /// pairwise joined with value 1, hold `s` vertices, where a block joined
    /// to itself holds any number and other blocks hold one. Exact for
    /// 0/1-valued graphons.
    pub fn has_sure_clique(&self, s: usize) -> bool {
        let live: Vec<usize> = (0..self.k()).filter(|&b| self.masses[b].is_positive()).collect();
        let one = Rational::one();
        let cap = |b: usize| if self.values[b][b] == one { s } else { 1 };
        fn grow(sg: &StepGraphon, live: &[usize], chosen: &mut Vec<usize>, from: usize, weight: usize, s: usize, cap: &dyn Fn(usize) -> usize) -> bool {
            if weight >= s {
                return true;
            }
            for idx in from..live.len() {
                let b = live[idx];
                if chosen.iter().all(|&c| sg.values[c][b].is_one()) {
                    chosen.push(b);
                    if grow(sg, live, chosen, idx + 1, weight + cap(b), s, cap) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        grow(self, &live, &mut Vec::new(), 0, 0, s, &cap)
    }
}

/// The edge-probability function `ω`.
#[derive(Clone, Debug)]
pub enum Graphon {
    Constant(Rational),
    Step(StepGraphon),
    LineIndicator(Arc<LineGraphModel>),
    PlaneIndicator(Arc<PlaneGraphModel>),
}

/// A point of the vertex space: a block label or a real coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Block(usize),
    Real(Rational),
}

impl Graphon {
    pub fn constant(p: Rational) -> Result<Self> {
        if !is_probability(&p) {
            return Err(Error::Spec(format!("edge probability {} outside [0,1]", fmt_rational(&p))));
        }
        Ok(Self::Constant(p))
    }

    pub fn line(mode: LineMode) -> Self {
        Self::LineIndicator(Arc::new(LineGraphModel::new(mode)))
    }

    pub fn plane(s: usize) -> Result<Self> {
        Ok(Self::PlaneIndicator(Arc::new(PlaneGraphModel::new(s)?)))
    }

    pub fn omega(&self, x: &Point, y: &Point) -> Result<Rational> {
        let real = |p: &Point| match p {
            Point::Real(r) => Ok(r.clone()),
            Point::Block(_) => Err(Error::Incompatible("indicator graphons take real points".into())),
        };
        let indicator = |b: bool| if b { Rational::one() } else { Rational::zero() };
        match self {
            Self::Constant(p) => Ok(p.clone()),
            Self::Step(s) => match (x, y) {
                (Point::Block(a), Point::Block(b)) if *a < s.k() && *b < s.k() => Ok(s.values[*a][*b].clone()),
                _ => Err(Error::Incompatible("step graphons take block labels below K".into())),
            },
            Self::LineIndicator(m) => Ok(indicator(m.adjacent(&real(x)?, &real(y)?)?)),
            Self::PlaneIndicator(m) => Ok(indicator(m.adjacent(&real(x)?, &real(y)?)?)),
        }
    }

    pub fn is_deterministic_in_edges(&self) -> bool {
        let sure = |p: &Rational| p.is_zero() || p.is_one();
        match self {
            Self::Constant(p) => sure(p),
            Self::Step(s) => s.values.iter().flatten().all(sure),
            Self::LineIndicator(_) | Self::PlaneIndicator(_) => true,
        }
    }

    pub fn check_compatible(&self, m: &VertexMeasure) -> Result<()> {
        match (self, m) {
            (Self::Constant(_), _) => Ok(()),
            (Self::Step(s), VertexMeasure::DiscreteBlocks(masses)) if masses == &s.masses => Ok(()),
            (Self::Step(_), VertexMeasure::DiscreteBlocks(_)) => {
                Err(Error::Incompatible("block measure masses differ from the step graphon's".into()))
            }
            (Self::Step(_), _) => Err(Error::Incompatible("step graphons need a discrete block measure".into())),
            (Self::LineIndicator(_) | Self::PlaneIndicator(_), m) if m.is_real() => Ok(()),
            _ => Err(Error::Incompatible("indicator graphons need a uniform or gaussian measure".into())),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Self::Constant(p) => format!("er:{}", fmt_rational(p)),
            Self::Step(s) => format!("step:{}", s.to_json()),
            Self::LineIndicator(m) => match m.mode() {
                LineMode::Plain => "line-universal".into(),
                LineMode::TriangleFree => "line-trianglefree".into(),
            },
            Self::PlaneIndicator(m) => format!("ksfree:{}", m.s()),
        }
    }
}

/// A sampled vertex in the representation used for fast adjacency.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Vertex {
    Free,
    Block(usize),
    /// The real number `k · 2^-40`.
    Dyadic(i128),
}

impl Vertex {
    fn dyadic(x: f64) -> Self {
        Vertex::Dyadic((x * (1u64 << COORD_BITS) as f64).round() as i128)
    }

    pub(crate) fn point(self) -> Option<Point> {
        match self {
            Vertex::Free => None,
            Vertex::Block(b) => Some(Point::Block(b)),
            Vertex::Dyadic(k) => Some(Point::Real(dyadic_rational(k))),
        }
    }
}

fn dyadic_rational(k: i128) -> Rational {
    Rational::new(BigInt::from(k), BigInt::one() << COORD_BITS)
}

enum Table {
    None,
    Line(DyadicTable),
    Plane(BoxTable),
}

/// Draws vertices and edges for one graphon and measure, caching the
/// dyadic adjacency table of indicator models between calls.
pub(crate) struct Sampler<'a> {
    graphon: &'a Graphon,
    measure: &'a VertexMeasure,
    cumulative: Vec<f64>,
    values: Vec<Vec<f64>>,
    table: Table,
    /// Table validity bound in units of `2^-40`.
    reach: i128,
}

impl<'a> Sampler<'a> {
    pub(crate) fn new(graphon: &'a Graphon, measure: &'a VertexMeasure) -> Result<Self> {
        graphon.check_compatible(measure)?;
        let values = match graphon {
            Graphon::Constant(p) => vec![vec![to_f64(p)]],
            Graphon::Step(s) => s.values.iter().map(|r| r.iter().map(to_f64).collect()).collect(),
            _ => Vec::new(),
        };
        Ok(Self { graphon, measure, cumulative: measure.cumulative(), values, table: Table::None, reach: -1 })
    }

    pub(crate) fn vertices(&self, n: usize, rng: &mut Stream) -> Vec<Vertex> {
        if matches!(self.graphon, Graphon::Constant(_)) {
            return vec![Vertex::Free; n];
        }
        (0..n).map(|_| self.measure.draw(rng, &self.cumulative)).collect()
    }

    /// Makes the cached table valid for every pair among `vs`.
    pub(crate) fn prepare(&mut self, vs: &[Vertex]) -> Result<()> {
        let ks = vs.iter().filter_map(|v| match v {
            Vertex::Dyadic(k) => Some(*k),
            _ => None,
        });
        let (lo, hi) = ks.fold((i128::MAX, i128::MIN), |(lo, hi), k| (lo.min(k), hi.max(k)));
        if lo > hi {
            return Ok(());
        }
        let need = match self.graphon {
            Graphon::LineIndicator(_) => hi - lo,
            Graphon::PlaneIndicator(_) => hi.abs().max(lo.abs()),
            _ => return Ok(()),
        };
        if need <= self.reach {
            return Ok(());
        }
        let unit = 1i128 << COORD_BITS;
        let mut reach = 16 * unit;
        while reach < need {
            reach *= 2;
        }
        let bound = Rational::from_integer(BigInt::from(reach / unit));
        self.table = match self.graphon {
            Graphon::LineIndicator(m) => Table::Line(m.difference_table(&bound, COORD_BITS)?),
            Graphon::PlaneIndicator(m) => Table::Plane(m.box_table(&bound, COORD_BITS)?),
            _ => unreachable!(),
        };
        self.reach = reach;
        Ok(())
    }

    /// `ω(u, v)` as a float; exact 0 and 1 for indicators. Requires
    /// [`Sampler::prepare`] on a set containing both vertices.
    pub(crate) fn weight(&self, u: Vertex, v: Vertex) -> f64 {
        let bit = |b: bool| if b { 1.0 } else { 0.0 };
        match (&self.table, u, v) {
            (Table::Line(t), Vertex::Dyadic(a), Vertex::Dyadic(b)) => bit(t.contains((a - b).abs())),
            (Table::Plane(t), Vertex::Dyadic(a), Vertex::Dyadic(b)) => bit(t.contains(a, b)),
            (_, Vertex::Block(a), Vertex::Block(b)) => self.values[a][b],
            (_, Vertex::Free, Vertex::Free) => self.values[0][0],
            _ => unreachable!("vertex kinds are fixed by the graphon"),
        }
    }

    pub(crate) fn edges(&mut self, vs: &[Vertex], rng: &mut Stream) -> Result<Graph> {
        self.prepare(vs)?;
        let mut g = Graph::empty(vs.len());
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let w = self.weight(vs[i], vs[j]);
                let edge = if w <= 0.0 {
                    false
                } else if w >= 1.0 {
                    true
                } else {
                    rng::uniform(rng) < w
                };
                if edge {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }
}

/// A finite sample with the data needed to re-derive its adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledGraph {
    pub graph: Graph,
    pub points: Option<Vec<Point>>,
    pub seed: u64,
    pub model: String,
}

#[derive(Serialize, Deserialize)]
struct SampledFile {
    model: String,
    seed: u64,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coords: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    blocks: Option<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl SampledGraph {
    /// Wraps a bare graph, e.g. one loaded from an edge list.
    pub fn bare(graph: Graph) -> Self {
        Self { graph, points: None, seed: 0, model: "input".into() }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn to_json(&self) -> String {
        let mut file = SampledFile {
            model: self.model.clone(),
            seed: self.seed,
            n: self.n(),
            coords: None,
            blocks: None,
            edges: self.graph.edges(),
        };
        if let Some(points) = &self.points {
            if points.iter().all(|p| matches!(p, Point::Block(_))) {
                file.blocks = Some(points.iter().filter_map(|p| if let Point::Block(b) = p { Some(*b) } else { None }).collect());
            } else {
                file.coords = Some(points.iter().filter_map(|p| if let Point::Real(r) = p { Some(fmt_rational(r)) } else { None }).collect());
            }
        }
        serde_json::to_string_pretty(&file).expect("serializable") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SampledFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph json: {e}")))?;
        let graph = Graph::from_edges(file.n, &file.edges)?;
        let points = match (file.coords, file.blocks) {
            (Some(c), None) => Some(c.iter().map(|s| parse_rational(s).map(Point::Real)).collect::<Result<Vec<_>>>()?),
            (None, Some(b)) => Some(b.into_iter().map(Point::Block).collect()),
            (None, None) => None,
            _ => return Err(Error::Parse("graph json has both coords and blocks".into())),
        };
        if points.as_ref().is_some_and(|p| p.len() != file.n) {
            return Err(Error::Parse("vertex data length differs from n".into()));
        }
        Ok(Self { graph, points, seed: file.seed, model: file.model })
    }

    /// Reads the edge-list or JSON form, detected by the first character.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Ok(Self::bare(Graph::parse_edge_list(text)?))
        }
    }
}

/// Samples `n` vertices from `m` and edges from `g`.
pub fn sample(g: &Graphon, m: &VertexMeasure, n: usize, seed: u64) -> Result<SampledGraph> {
    let mut sampler = Sampler::new(g, m)?;
    let vs = sampler.vertices(n, &mut rng::stream(seed, VERTEX_STREAM));
    let graph = sampler.edges(&vs, &mut rng::stream(seed, EDGE_STREAM))?;
    let points = vs.iter().map(|v| v.point()).collect::<Option<Vec<_>>>();
    Ok(SampledGraph { graph, points, seed, model: g.describe() })
}

/// Outcome of the generalized-universality diagnostic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniversalityReport {
    pub trials: usize,
    pub probes: usize,
    pub successes: usize,
    pub fraction: f64,
    /// Trials for which an exact witness was sought (indicator models).
    pub exact_checked: usize,
    pub exact_confirmed: usize,
    /// Trials whose white points violate the model's precondition.
    pub exact_inadmissible: usize,
}

/// Monte-Carlo check that random finite white/black point sets have a
/// common extension point of positive measure.
///
/// Each trial draws 1 to 3 white and 0 to 3 black points, then up to
/// `probes` candidates `z`, succeeding if some `z` has
/// `∏ ω(x_i, z) (1 - ω(y_j, z)) > 0`. For indicator models each trial is
/// also solved exactly by the model's witness construction.
pub fn check_generalized_universality(
    g: &Graphon,
    m: &VertexMeasure,
    trials: usize,
    probes: usize,
    seed: u64,
) -> Result<UniversalityReport> {
    if trials == 0 || probes == 0 {
        return Err(Error::Precondition("trials and probes must be at least 1".into()));
    }
    let mut sampler = Sampler::new(g, m)?;
    let mut rng = rng::stream(seed, TUPLE_STREAM);
    let mut report = UniversalityReport {
        trials,
        probes,
        successes: 0,
        fraction: 0.0,
        exact_checked: 0,
        exact_confirmed: 0,
        exact_inadmissible: 0,
    };
    for _ in 0..trials {
        let whites = 1 + (rng::uniform(&mut rng) * 3.0) as usize;
        let blacks = (rng::uniform(&mut rng) * 4.0) as usize;
        let xs = sampler.vertices(whites + blacks, &mut rng);
        let zs = sampler.vertices(probes, &mut rng);
        let mut all = xs.clone();
        all.extend_from_slice(&zs);
        sampler.prepare(&all)?;
        let clash = |x: Vertex, z: Vertex| matches!(x, Vertex::Dyadic(_)) && x == z;
        let positive = |z: Vertex| {
            let joined = xs[..whites].iter().all(|&x| !clash(x, z) && sampler.weight(x, z) > 0.0);
            joined && xs[whites..].iter().all(|&y| clash(y, z) || sampler.weight(y, z) < 1.0)
        };
        if zs.iter().any(|&z| positive(z)) {
            report.successes += 1;
        }
        let reals = |vs: &[Vertex]| -> Vec<Rational> {
            vs.iter().filter_map(|v| if let Vertex::Dyadic(k) = v { Some(dyadic_rational(*k)) } else { None }).collect()
        };
        let (w, b) = (reals(&xs[..whites]), reals(&xs[whites..]));
        let exact = match g {
            Graphon::LineIndicator(model) => Some(model.witness_interval(&w, &b)),
            Graphon::PlaneIndicator(model) => Some(model.witness_box(&w, &b)),
            _ => None,
        };
        match exact {
            None => {}
            Some(Ok(_)) => {
                report.exact_checked += 1;
                report.exact_confirmed += 1;
            }
            Some(Err(Error::Precondition(_))) => report.exact_inadmissible += 1,
            Some(Err(Error::InvalidPattern(_))) => report.exact_inadmissible += 1,
            Some(Err(e)) => {
                report.exact_checked += 1;
                if !matches!(e, Error::InfeasibleCover(_) | Error::Defect(_)) {
                    return Err(e);
                }
            }
        }
    }
    report.fraction = report.successes as f64 / trials as f64;
    Ok(report)
}
