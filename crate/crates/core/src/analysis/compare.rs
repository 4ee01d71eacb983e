use std::fmt;

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::graphon::Sampler;
use crate::rng::{self, EDGE_STREAM, VERTEX_STREAM};
use crate::spec::ModelSpec;

/// Significance level of the homogeneity test.
pub const SIGNIFICANCE: f64 = 0.01;
const SMALL_EXPECTED: f64 = 5.0;
const SMALL_CELL_SHARE: f64 = 0.2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Same,
    Different,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Same => "same",
            Verdict::Different => "different",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub a: ModelSpec,
    pub b: ModelSpec,
    pub k: usize,
    pub samples_per_side: usize,
    /// Labeled patterns seen on either side.
    pub cells: usize,
    pub small_cells: usize,
    pub statistic: f64,
    pub threshold: f64,
    pub verdict: Verdict,
    pub counts_a: Vec<u64>,
    pub counts_b: Vec<u64>,
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "compare a={} b={} k={} samples={} cells={} small_cells={} statistic={:.4} threshold={:.4} verdict={}",
            self.a, self.b, self.k, self.samples_per_side, self.cells, self.small_cells, self.statistic, self.threshold, self.verdict
        )
    }
}

/// Frequencies of the labeled `k × k` patterns in `samples` independent
/// draws, indexed by the upper triangle read row by row, first pair as the
/// lowest bit.
fn tally(spec: &ModelSpec, k: usize, samples: usize, seed: u64) -> Result<Vec<u64>> {
    let (graphon, measure) = spec.build()?;
    let mut sampler = Sampler::new(&graphon, &measure)?;
    let side = rng::mix(seed, spec.seed);
    let mut vrng = rng::stream(side, VERTEX_STREAM);
    let mut erng = rng::stream(side, EDGE_STREAM);
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let mut counts = vec![0u64; 1 << pairs.len()];
    for _ in 0..samples {
        let vs = sampler.vertices(k, &mut vrng);
        let g = sampler.edges(&vs, &mut erng)?;
        let code = pairs.iter().enumerate().fold(0usize, |c, (t, &(i, j))| c | usize::from(g.has_edge(i, j)) << t);
        counts[code] += 1;
    }
    Ok(counts)
}

/// Chi-square homogeneity test between the labeled pattern frequencies of
/// two models.
///
/// Side `X` draws from seed `mix(seed, X.seed)`, so equal specs with equal
/// seeds give identical tallies and swapping the sides swaps the tallies.
/// Cells empty on both sides are dropped. The verdict is `inconclusive` if
/// more than 20% of the remaining cells expect fewer than 5 draws on either
/// side, otherwise `different` iff the statistic exceeds the `1 - 0.01`
/// quantile of chi-square with `cells - 1` degrees of freedom.
pub fn compare_matrix_distributions(a: &ModelSpec, b: &ModelSpec, k: usize, samples_per_side: usize, seed: u64) -> Result<ComparisonReport> {
    if !(1..=4).contains(&k) {
        return Err(Error::Precondition(format!("k must be between 1 and 4, got {k}")));
    }
    if samples_per_side < 100 {
        return Err(Error::Precondition(format!("at least 100 samples per side are required, got {samples_per_side}")));
    }
    let counts_a = tally(a, k, samples_per_side, seed)?;
    let counts_b = tally(b, k, samples_per_side, seed)?;
    let total = 2.0 * samples_per_side as f64;
    let (mut cells, mut small, mut statistic) = (0usize, 0usize, 0.0f64);
    for (&x, &y) in counts_a.iter().zip(&counts_b) {
        if x + y == 0 {
            continue;
        }
        cells += 1;
        let expected = (x + y) as f64 * samples_per_side as f64 / total;
        if expected < SMALL_EXPECTED {
            small += 1;
        }
        statistic += ((x as f64 - expected).powi(2) + (y as f64 - expected).powi(2)) / expected;
    }
    let threshold = if cells > 1 {
        ChiSquared::new((cells - 1) as f64).expect("positive degrees of freedom").inverse_cdf(1.0 - SIGNIFICANCE)
    } else {
        0.0
    };
    let verdict = if small as f64 > SMALL_CELL_SHARE * cells as f64 {
        Verdict::Inconclusive
    } else if statistic > threshold {
        Verdict::Different
    } else {
        Verdict::Same
    };
    Ok(ComparisonReport {
        a: a.clone(),
        b: b.clone(),
        k,
        samples_per_side,
        cells,
        small_cells: small,
        statistic,
        threshold,
        verdict,
        counts_a,
        counts_b,
    })
}
