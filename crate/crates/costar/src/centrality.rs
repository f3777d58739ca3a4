//! Degree, betweenness (exact and pivot-sampled), and closeness centrality.
//!
//! Betweenness follows Brandes' dependency accumulation, one BFS per source.
//! The exact measure uses every node as a source; the sampled measure uses
//! `k` seeded random pivots scaled by `n/k`, which keeps the estimator
//! unbiased. Closeness of `v` is `(n - 1) / sum of distances from v`, so its
//! reciprocal is the mean path length from `v` to everyone else.
//!
//! Sampling uses ChaCha8 seeded from a `u64`, so every score here is
//! reproducible across runs, platforms, and worker counts.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::engine;
use crate::error::{Error, Result};
use crate::graph::{ActorId, ActorTable, CoStarGraph};

/// Which measure a [`CentralityVector`] holds, with sampling provenance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Degree,
    BetweennessExact,
    BetweennessSampled { k: usize, seed: u64 },
    Closeness,
}

impl Measure {
    pub fn label(&self) -> &'static str {
        match self {
            Measure::Degree => "degree",
            Measure::BetweennessExact => "betweenness-exact",
            Measure::BetweennessSampled { .. } => "betweenness-sampled",
            Measure::Closeness => "closeness",
        }
    }
}

/// Per-actor scores for one measure.
#[derive(Debug, Clone)]
pub struct CentralityVector {
    pub measure: Measure,
    /// Node count of the graph the scores were computed on.
    pub n: usize,
    pub entries: Vec<(ActorId, f64)>,
}

impl CentralityVector {
    pub fn score_of(&self, v: ActorId) -> Option<f64> {
        self.entries
            .iter()
            .find(|(id, _)| *id == v)
            .map(|(_, s)| *s)
    }

    /// Entries sorted descending by score, ties by actor name ascending.
    pub fn ranked(&self, table: &ActorTable) -> Vec<(ActorId, f64)> {
        let mut entries = self.entries.clone();
        entries.sort_by(|a, b| {
            b.1.total_cmp(&a.1)
                .then_with(|| table.name(a.0).cmp(table.name(b.0)))
        });
        entries
    }
}

/// Degree divided by the maximum possible degree, `n - 1`.
pub fn degree_centrality(g: &CoStarGraph) -> Result<CentralityVector> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes { n, min: 2 });
    }
    let denom = (n - 1) as f64;
    let entries = (0..n as u32)
        .map(|v| (ActorId(v), g.degree(ActorId(v)) as f64 / denom))
        .collect();
    Ok(CentralityVector {
        measure: Measure::Degree,
        n,
        entries,
    })
}

fn betweenness_from_pivots(
    g: &CoStarGraph,
    pivots: &[ActorId],
    measure: Measure,
    k: usize,
) -> CentralityVector {
    let n = g.node_count();
    let raw = engine::brandes_sum(g, pivots);
    // Halve for undirectedness, scale by n/k for sampling, normalize by the
    // number of pairs excluding the node itself. For k = n the factor is
    // bit-identical to the exact one, so sampled(k = n) == exact.
    let factor = if n < 3 {
        0.0
    } else {
        let pairs = (n - 1) as f64 * (n - 2) as f64 / 2.0;
        0.5 * (n as f64 / k as f64) / pairs
    };
    let entries = raw
        .into_iter()
        .enumerate()
        .map(|(v, dep)| (ActorId(v as u32), dep * factor))
        .collect();
    CentralityVector {
        measure,
        n,
        entries,
    }
}

/// Exact betweenness centrality of every node, normalized to `[0, 1]`.
///
/// Runs one BFS per node; use [`betweenness_sampled`] on large graphs.
pub fn betweenness_exact(g: &CoStarGraph) -> CentralityVector {
    let all: Vec<ActorId> = (0..g.node_count() as u32).map(ActorId).collect();
    betweenness_from_pivots(g, &all, Measure::BetweennessExact, g.node_count().max(1))
}

/// Betweenness estimated from `k` random pivot sources.
///
/// Pivots are drawn without replacement with a ChaCha8 generator seeded by
/// `seed`, then visited in ascending id order, so a fixed `(k, seed)` gives
/// the same scores on every run and any worker count.
pub fn betweenness_sampled(g: &CoStarGraph, k: usize, seed: u64) -> Result<CentralityVector> {
    let n = g.node_count();
    if k == 0 || k > n {
        return Err(Error::InvalidPivotCount { k, n });
    }
    let pivots = sample_ids(n, k, seed);
    Ok(betweenness_from_pivots(
        g,
        &pivots,
        Measure::BetweennessSampled { k, seed },
        k,
    ))
}

/// `k` distinct ids drawn uniformly from `0..n`, ascending.
fn sample_ids(n: usize, k: usize, seed: u64) -> Vec<ActorId> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ids: Vec<u32> = rand::seq::index::sample(&mut rng, n, k)
        .into_iter()
        .map(|i| i as u32)
        .collect();
    ids.sort_unstable();
    ids.into_iter().map(ActorId).collect()
}

/// Closeness score from a node's distance sum: `(n - 1) / sum`.
pub fn closeness_from_distance_sum(n: usize, distance_sum: u64) -> f64 {
    (n - 1) as f64 / distance_sum as f64
}

/// Mean path length from a node given its distance sum; the reciprocal of
/// its closeness.
pub fn mean_path_length(n: usize, distance_sum: u64) -> f64 {
    distance_sum as f64 / (n - 1) as f64
}

fn check_small(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::TooFewNodes { n, min: 2 });
    }
    Ok(())
}

/// Closeness centrality of a single node on a connected graph.
pub fn closeness(g: &CoStarGraph, v: ActorId) -> Result<f64> {
    check_small(g.node_count())?;
    let (sum, reached) = engine::distance_sums(g, &[v])[0];
    if reached as usize != g.node_count() {
        return Err(Error::Disconnected);
    }
    Ok(closeness_from_distance_sum(g.node_count(), sum))
}

/// Closeness of the first `limit` entries of `candidates`, typically a
/// betweenness ranking.
pub fn closeness_top(
    g: &CoStarGraph,
    candidates: &[ActorId],
    limit: usize,
) -> Result<CentralityVector> {
    let n = g.node_count();
    check_small(n)?;
    let chosen = &candidates[..limit.min(candidates.len())];
    let sums = engine::distance_sums(g, chosen);
    let mut entries = Vec::with_capacity(chosen.len());
    for (&v, &(sum, reached)) in chosen.iter().zip(&sums) {
        if reached as usize != n {
            return Err(Error::Disconnected);
        }
        entries.push((v, closeness_from_distance_sum(n, sum)));
    }
    Ok(CentralityVector {
        measure: Measure::Closeness,
        n,
        entries,
    })
}

/// One histogram bucket of [`SampleStats`].
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct HistogramBin {
    pub lower: f64,
    pub upper: f64,
    pub count: u64,
}

/// Mean-path-length statistics over a random sample of actors.
#[derive(Debug, Clone)]
pub struct SampleStats {
    pub sample_size: usize,
    /// Mean of the per-actor mean path lengths.
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator).
    pub sd: f64,
    /// 20 equal-width bins spanning the sample range.
    pub bins: Vec<HistogramBin>,
    /// Sampled actors, ascending by id.
    pub actors: Vec<ActorId>,
    /// Mean path length per sampled actor, parallel to `actors`.
    pub values: Vec<f64>,
}

const SAMPLE_BINS: usize = 20;

/// Samples `sample_size` actors without replacement and summarizes their
/// mean path lengths.
pub fn closeness_sample_stats(
    g: &CoStarGraph,
    sample_size: usize,
    seed: u64,
) -> Result<SampleStats> {
    let n = g.node_count();
    check_small(n)?;
    if sample_size == 0 || sample_size > n {
        return Err(Error::InvalidSampleSize {
            size: sample_size,
            n,
        });
    }

    let actors = sample_ids(n, sample_size, seed);
    let sums = engine::distance_sums(g, &actors);
    let mut values = Vec::with_capacity(sample_size);
    for &(sum, reached) in &sums {
        if reached as usize != n {
            return Err(Error::Disconnected);
        }
        values.push(mean_path_length(n, sum));
    }

    let mean = values.iter().sum::<f64>() / sample_size as f64;
    let sd = if sample_size < 2 {
        0.0
    } else {
        let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        (ss / (sample_size - 1) as f64).sqrt()
    };

    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = (hi - lo) / SAMPLE_BINS as f64;
    let mut bins: Vec<HistogramBin> = (0..SAMPLE_BINS)
        .map(|i| HistogramBin {
            lower: lo + width * i as f64,
            upper: lo + width * (i + 1) as f64,
            count: 0,
        })
        .collect();
    for &v in &values {
        let idx = if width > 0.0 {
            (((v - lo) / width) as usize).min(SAMPLE_BINS - 1)
        } else {
            0
        };
        bins[idx].count += 1;
    }

    Ok(SampleStats {
        sample_size,
        mean,
        sd,
        bins,
        actors,
        values,
    })
}
