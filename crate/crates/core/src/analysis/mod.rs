//! Checks on sampled graphs: cliques, extension properties, induced
//! subgraph census, matrix-distribution comparison and a twin diagnostic.
//!
//! Randomized checks split their work into a fixed number of shards, each
//! with its own seeded stream, so results do not depend on the thread count.

mod census;
mod clique;
mod compare;
mod extension;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

pub use census::{all_classes, canonical_code, induced_census, induced_census_with, CensusReport, RANDOM_SUBSETS};
pub use clique::{clique_in, find_clique};
pub use compare::{compare_matrix_distributions, ComparisonReport, Verdict, SIGNIFICANCE};
pub use extension::{extension_stats, extension_stats_with, ExtensionReport, FailingTuple, RESAMPLE_LIMIT};

use crate::graph::Graph;

/// Shard count for randomized checks.
pub const SHARDS: usize = 16;

/// Runs `f` on shards `0..shards` with up to `threads` workers, returning
/// results in shard order.
pub(crate) fn run_shards<T: Send>(shards: usize, threads: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let threads = threads.clamp(1, shards.max(1));
    if threads == 1 {
        return (0..shards).map(f).collect();
    }
    let mut out: Vec<Option<T>> = (0..shards).map(|_| None).collect();
    std::thread::scope(|scope| {
        let f = &f;
        let handles: Vec<_> = (0..threads)
            .map(|t| scope.spawn(move || (t..shards).step_by(threads).map(|s| (s, f(s))).collect::<Vec<_>>()))
            .collect();
        for h in handles {
            for (s, v) in h.join().expect("shard worker panicked") {
                out[s] = Some(v);
            }
        }
    });
    out.into_iter().map(|v| v.expect("every shard ran")).collect()
}

/// Vertices sharing their neighbourhood with another vertex. Adjacent
/// twins agree on closed neighbourhoods, non-adjacent twins on open ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PurityReport {
    pub n: usize,
    pub vertices_with_twin: usize,
    pub twin_classes: usize,
}

pub fn purity_diagnostic(g: &Graph) -> PurityReport {
    let n = g.n();
    let mut has_twin = vec![false; n];
    let mut classes = 0;
    for closed in [false, true] {
        let mut groups: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
        for v in 0..n {
            let mut row = g.row(v).to_vec();
            if closed {
                row[v / 64] |= 1 << (v % 64);
            }
            groups.entry(row).or_default().push(v);
        }
        for members in groups.values().filter(|m| m.len() > 1) {
            classes += 1;
            members.iter().for_each(|&v| has_twin[v] = true);
        }
    }
    PurityReport { n, vertices_with_twin: has_twin.iter().filter(|&&t| t).count(), twin_classes: classes }
}

impl fmt::Display for PurityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "purity n={} vertices_with_twin={} twin_classes={}", self.n, self.vertices_with_twin, self.twin_classes)
    }
}
