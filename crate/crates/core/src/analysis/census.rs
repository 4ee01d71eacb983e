use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::{clique_in, run_shards, SHARDS};
use crate::graph::Graph;
use crate::graphon::SampledGraph;
use crate::patterns::PatternFilter;
use crate::rng::{self, CENSUS_STREAM};

/// Subsets drawn when exhaustive enumeration would exceed this many.
pub const RANDOM_SUBSETS: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub k: usize,
    pub mode: String,
    pub exhaustive: bool,
    pub subsets_examined: u64,
    pub classes_found: BTreeSet<u16>,
    pub classes_expected: BTreeSet<u16>,
    /// Occurrences per canonical code.
    pub counts: BTreeMap<u16, u64>,
}

impl CensusReport {
    pub fn missing(&self) -> BTreeSet<u16> {
        self.classes_expected.difference(&self.classes_found).copied().collect()
    }

    pub fn unexpected(&self) -> BTreeSet<u16> {
        self.classes_found.difference(&self.classes_expected).copied().collect()
    }

    pub fn complete(&self) -> bool {
        self.missing().is_empty()
    }
}

impl fmt::Display for CensusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "census k={} mode={} subsets={}{} found={}/{} expected",
            self.k,
            self.mode,
            self.subsets_examined,
            if self.exhaustive { " (all)" } else { " (random)" },
            self.classes_found.intersection(&self.classes_expected).count(),
            self.classes_expected.len()
        )?;
        if !self.missing().is_empty() {
            writeln!(f, "  missing {:?}", self.missing())?;
        }
        if !self.unexpected().is_empty() {
            writeln!(f, "  unexpected {:?}", self.unexpected())?;
        }
        Ok(())
    }
}

fn pairs(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect()
}

fn code_of(k: usize, adjacent: impl Fn(usize, usize) -> bool) -> u16 {
    let p = pairs(k);
    p.iter().enumerate().fold(0, |code, (t, &(i, j))| code | (u16::from(adjacent(i, j)) << (p.len() - 1 - t)))
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    crate::measure::all_permutations(k)
}

/// The adjacency bitstring of the upper triangle, row by row with the first
/// pair most significant, minimized over all relabelings. `k <= 5`.
pub fn canonical_code(g: &Graph) -> u16 {
    let k = g.n();
    assert!(k <= 5, "canonical codes cover at most 5 vertices");
    permutations(k).iter().map(|p| code_of(k, |i, j| g.has_edge(p[i], p[j]))).min().unwrap_or(0)
}

/// Canonical code of every labeled code on `k` vertices.
fn canonical_table(k: usize) -> Vec<u16> {
    let p = pairs(k);
    let perms = permutations(k);
    (0..1u32 << p.len())
        .map(|code| {
            let bit = |i: usize, j: usize| {
                let (a, b) = (i.min(j), i.max(j));
                let t = p.iter().position(|&q| q == (a, b)).expect("pair");
                code >> (p.len() - 1 - t) & 1 == 1
            };
            perms.iter().map(|q| code_of(k, |i, j| bit(q[i], q[j]))).min().unwrap_or(0)
        })
        .collect()
}

fn graph_of(k: usize, code: u16) -> Graph {
    let p = pairs(k);
    let mut g = Graph::empty(k);
    for (t, &(i, j)) in p.iter().enumerate() {
        if code >> (p.len() - 1 - t) & 1 == 1 {
            g.add_edge(i, j);
        }
    }
    g
}

/// Canonical codes of all `k`-vertex graphs admitted by `mode`.
pub fn all_classes(k: usize, mode: PatternFilter) -> BTreeSet<u16> {
    let forbidden = match mode {
        PatternFilter::Plain => None,
        PatternFilter::TriangleFree => Some(3),
        PatternFilter::KsFree(s) => Some(s),
    };
    canonical_table(k)
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .filter(|&c| forbidden.is_none_or(|s| clique_in(&graph_of(k, c), s).is_none()))
        .collect()
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    (0..k).try_fold(1u64, |acc, i| acc.checked_mul(n - i).map(|x| x / (i + 1)))
}

/// Induced `k`-vertex subgraph classes, over all subsets when there are at
/// most [`RANDOM_SUBSETS`] of them and over that many random subsets
/// otherwise, seeded from the sample's seed.
pub fn induced_census(g: &SampledGraph, k: usize, mode: PatternFilter) -> CensusReport {
    induced_census_with(g, k, mode, g.seed, 1)
}

pub fn induced_census_with(g: &SampledGraph, k: usize, mode: PatternFilter, seed: u64, threads: usize) -> CensusReport {
    assert!(k <= 5, "census covers at most 5 vertices");
    let n = g.n();
    let table = canonical_table(k);
    let graph = &g.graph;
    let code = |vs: &[usize]| table[code_of(k, |i, j| graph.has_edge(vs[i], vs[j])) as usize];
    let total = if k > n { Some(0) } else { binomial(n as u64, k as u64) };
    let exhaustive = total.is_some_and(|t| t <= RANDOM_SUBSETS);
    let mut counts = BTreeMap::new();
    let examined;
    if exhaustive {
        let mut vs: Vec<usize> = (0..k).collect();
        let mut seen = 0u64;
        if k <= n {
            loop {
                *counts.entry(code(&vs)).or_insert(0u64) += 1;
                seen += 1;
                let Some(i) = (0..k).rev().find(|&i| vs[i] < n - k + i) else { break };
                vs[i] += 1;
                for j in i + 1..k {
                    vs[j] = vs[j - 1] + 1;
                }
            }
        }
        examined = seen;
    } else {
        let per_shard = |s: usize| RANDOM_SUBSETS / SHARDS as u64 + u64::from((s as u64) < RANDOM_SUBSETS % SHARDS as u64);
        let shards = run_shards(SHARDS, threads, |s| {
            let mut rng = rng::stream(rng::mix(seed, s as u64), CENSUS_STREAM);
            let mut local = BTreeMap::new();
            let mut vs = vec![0usize; k];
            for _ in 0..per_shard(s) {
                for i in 0..k {
                    vs[i] = loop {
                        let v = ((rng::uniform(&mut rng) * n as f64) as usize).min(n - 1);
                        if !vs[..i].contains(&v) {
                            break v;
                        }
                    };
                }
                *local.entry(code(&vs)).or_insert(0u64) += 1;
            }
            local
        });
        for local in shards {
            for (c, m) in local {
                *counts.entry(c).or_insert(0) += m;
            }
        }
        examined = RANDOM_SUBSETS;
    }
    CensusReport {
        k,
        mode: mode.to_string(),
        exhaustive,
        subsets_examined: examined,
        classes_found: counts.keys().copied().collect(),
        classes_expected: all_classes(k, mode),
        counts,
    }
}
