use std::fmt;

use serde::Serialize;

use super::{clique_in, run_shards, SHARDS};
use crate::error::{Error, Result};
use crate::graphon::{Point, SampledGraph};
use crate::intervals::fmt_rational;
use crate::patterns::PatternFilter;
use crate::rng::{self, TUPLE_STREAM};

/// Attempts at drawing one admissible tuple before giving up.
pub const RESAMPLE_LIMIT: usize = 10_000;
const MAX_FAILURES: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FailingTuple {
    pub white: Vec<usize>,
    pub black: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub white_points: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub black_points: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtensionReport {
    pub white_size: usize,
    pub black_size: usize,
    pub mode: String,
    pub tuples_tested: usize,
    pub tuples_satisfied: usize,
    /// The first few unsatisfied tuples.
    pub sample_failures: Vec<FailingTuple>,
}

impl ExtensionReport {
    pub fn fraction(&self) -> f64 {
        if self.tuples_tested == 0 {
            return 0.0;
        }
        self.tuples_satisfied as f64 / self.tuples_tested as f64
    }
}

impl fmt::Display for ExtensionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "extension white={} black={} mode={} satisfied={}/{} fraction={:.6}",
            self.white_size,
            self.black_size,
            self.mode,
            self.tuples_satisfied,
            self.tuples_tested,
            self.fraction()
        )?;
        for t in &self.sample_failures {
            write!(f, "  unsatisfied U={:?} W={:?}", t.white, t.black)?;
            if let (Some(w), Some(b)) = (&t.white_points, &t.black_points) {
                write!(f, " U_points={w:?} W_points={b:?}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Samples `tuples` disjoint pairs `(U, W)` and counts those with a vertex
/// outside `U ∪ W` joined to all of `U` and none of `W`. Tuples whose `U`
/// is inadmissible for `mode` are redrawn.
pub fn extension_stats(
    g: &SampledGraph,
    white_size: usize,
    black_size: usize,
    tuples: usize,
    seed: u64,
    mode: PatternFilter,
) -> Result<ExtensionReport> {
    extension_stats_with(g, white_size, black_size, tuples, seed, mode, 1)
}

pub fn extension_stats_with(
    g: &SampledGraph,
    white_size: usize,
    black_size: usize,
    tuples: usize,
    seed: u64,
    mode: PatternFilter,
    threads: usize,
) -> Result<ExtensionReport> {
    let n = g.n();
    if white_size + black_size > n {
        return Err(Error::Precondition(format!("{white_size} white and {black_size} black vertices exceed n = {n}")));
    }
    let forbidden = match mode {
        PatternFilter::Plain => None,
        PatternFilter::TriangleFree => Some(2),
        PatternFilter::KsFree(s) => Some(s - 1),
    };
    let per_shard = |s: usize| tuples / SHARDS + usize::from(s < tuples % SHARDS);
    let shards = run_shards(SHARDS, threads, |s| -> Result<(usize, Vec<FailingTuple>)> {
        let mut rng = rng::stream(rng::mix(seed, s as u64), TUPLE_STREAM);
        let mut order: Vec<usize> = (0..n).collect();
        let (mut satisfied, mut failures) = (0, Vec::new());
        for _ in 0..per_shard(s) {
            let mut attempts = 0;
            let (white, black) = loop {
                attempts += 1;
                if attempts > RESAMPLE_LIMIT {
                    return Err(Error::TupleExhaustion(RESAMPLE_LIMIT));
                }
                for i in 0..white_size + black_size {
                    let j = i + ((rng::uniform(&mut rng) * (n - i) as f64) as usize).min(n - i - 1);
                    order.swap(i, j);
                }
                let white = order[..white_size].to_vec();
                if forbidden.is_some_and(|k| clique_in(&g.graph.induced(&white), k).is_some()) {
                    continue;
                }
                break (white, order[white_size..white_size + black_size].to_vec());
            };
            if extends(g, &white, &black) {
                satisfied += 1;
            } else if failures.len() < MAX_FAILURES {
                failures.push(failing(g, white, black));
            }
        }
        Ok((satisfied, failures))
    });
    let mut report = ExtensionReport {
        white_size,
        black_size,
        mode: mode.to_string(),
        tuples_tested: tuples,
        tuples_satisfied: 0,
        sample_failures: Vec::new(),
    };
    for shard in shards {
        let (satisfied, failures) = shard?;
        report.tuples_satisfied += satisfied;
        report.sample_failures.extend(failures);
    }
    report.sample_failures.truncate(MAX_FAILURES);
    Ok(report)
}

fn extends(g: &SampledGraph, white: &[usize], black: &[usize]) -> bool {
    let graph = &g.graph;
    let n = graph.n();
    let mut cand: Vec<u64> = (0..graph.words()).map(|w| if (w + 1) * 64 <= n { !0 } else { (1u64 << (n - w * 64)) - 1 }).collect();
    for &u in white {
        cand.iter_mut().zip(graph.row(u)).for_each(|(c, r)| *c &= r);
    }
    for &v in black {
        cand.iter_mut().zip(graph.row(v)).for_each(|(c, r)| *c &= !r);
    }
    for &v in white.iter().chain(black) {
        cand[v / 64] &= !(1 << (v % 64));
    }
    cand.iter().any(|&c| c != 0)
}

fn failing(g: &SampledGraph, white: Vec<usize>, black: Vec<usize>) -> FailingTuple {
    let show = |vs: &[usize]| {
        g.points.as_ref().map(|p| {
            vs.iter()
                .map(|&v| match &p[v] {
                    Point::Real(r) => fmt_rational(r),
                    Point::Block(b) => format!("block {b}"),
                })
                .collect()
        })
    };
    FailingTuple { white_points: show(&white), black_points: show(&black), white, black }
}
