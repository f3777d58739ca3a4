//! Batched single-source BFS execution shared by the centrality routines.
//!
//! Sources are processed in fixed-size chunks. Each chunk produces a partial
//! score vector by visiting its sources in ascending order, and the partials
//! are merged in ascending chunk order no matter which worker finished
//! first. The floating-point result is therefore bit-identical for any
//! worker count, and the sequential build (`--no-default-features`) produces
//! exactly the same bytes as the rayon build.

use std::collections::VecDeque;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::graph::{ActorId, CoStarGraph};

/// Sources per task. Fixed: chunk boundaries are part of the summation
/// order.
pub const SOURCE_CHUNK: usize = 16;

/// Chunks in flight at once; bounds partial-buffer memory without touching
/// the merge order.
#[cfg(feature = "parallel")]
const CHUNKS_PER_WAVE: usize = 64;

/// Per-worker scratch for Brandes dependency accumulation.
struct BrandesScratch {
    dist: Vec<u32>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    /// Nodes in BFS discovery order; doubles as the queue.
    order: Vec<u32>,
}

impl BrandesScratch {
    fn new(n: usize) -> BrandesScratch {
        BrandesScratch {
            dist: vec![u32::MAX; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
        }
    }

    /// Adds the dependency of every node on shortest paths from `source`
    /// into `acc`. Endpoints are excluded: the source itself gets nothing.
    fn accumulate(&mut self, g: &CoStarGraph, source: ActorId, acc: &mut [f64]) {
        self.order.clear();
        self.dist[source.index()] = 0;
        self.sigma[source.index()] = 1.0;
        self.order.push(source.0);

        let mut head = 0;
        while head < self.order.len() {
            let v = self.order[head];
            head += 1;
            let next_dist = self.dist[v as usize] + 1;
            for &w in g.neighbors(ActorId(v)) {
                if self.dist[w as usize] == u32::MAX {
                    self.dist[w as usize] = next_dist;
                    self.order.push(w);
                }
                if self.dist[w as usize] == next_dist {
                    self.sigma[w as usize] += self.sigma[v as usize];
                }
            }
        }

        // Reverse BFS order: every node is settled after all nodes farther
        // from the source. Predecessors are re-derived from distances, which
        // avoids storing predecessor lists.
        for &w in self.order[1..].iter().rev() {
            let coeff = (1.0 + self.delta[w as usize]) / self.sigma[w as usize];
            let dist_w = self.dist[w as usize];
            for &v in g.neighbors(ActorId(w)) {
                if self.dist[v as usize] + 1 == dist_w {
                    self.delta[v as usize] += self.sigma[v as usize] * coeff;
                }
            }
            acc[w as usize] += self.delta[w as usize];
        }

        // Reset only what this traversal touched.
        for &v in &self.order {
            self.dist[v as usize] = u32::MAX;
            self.sigma[v as usize] = 0.0;
            self.delta[v as usize] = 0.0;
        }
    }
}

fn brandes_chunk(g: &CoStarGraph, chunk: &[ActorId]) -> Vec<f64> {
    let mut partial = vec![0.0; g.node_count()];
    let mut scratch = BrandesScratch::new(g.node_count());
    for &source in chunk {
        scratch.accumulate(g, source, &mut partial);
    }
    partial
}

fn merge(acc: &mut [f64], partial: &[f64]) {
    for (a, p) in acc.iter_mut().zip(partial) {
        *a += *p;
    }
}

/// Sum of Brandes dependencies over `sources`, sequentially.
pub fn brandes_sum_sequential(g: &CoStarGraph, sources: &[ActorId]) -> Vec<f64> {
    let mut acc = vec![0.0; g.node_count()];
    for chunk in sources.chunks(SOURCE_CHUNK) {
        let partial = brandes_chunk(g, chunk);
        merge(&mut acc, &partial);
    }
    acc
}

/// Sum of Brandes dependencies over `sources`, chunks fanned out to the
/// ambient rayon pool.
#[cfg(feature = "parallel")]
pub fn brandes_sum_parallel(g: &CoStarGraph, sources: &[ActorId]) -> Vec<f64> {
    let chunks: Vec<&[ActorId]> = sources.chunks(SOURCE_CHUNK).collect();
    let mut acc = vec![0.0; g.node_count()];
    for wave in chunks.chunks(CHUNKS_PER_WAVE) {
        let partials: Vec<Vec<f64>> = wave
            .par_iter()
            .map(|chunk| brandes_chunk(g, chunk))
            .collect();
        for partial in &partials {
            merge(&mut acc, partial);
        }
    }
    acc
}

/// Sum of Brandes dependencies over `sources`.
pub fn brandes_sum(g: &CoStarGraph, sources: &[ActorId]) -> Vec<f64> {
    #[cfg(feature = "parallel")]
    {
        brandes_sum_parallel(g, sources)
    }
    #[cfg(not(feature = "parallel"))]
    {
        brandes_sum_sequential(g, sources)
    }
}

fn distance_sum_one(
    g: &CoStarGraph,
    source: ActorId,
    dist: &mut [u32],
    queue: &mut VecDeque<u32>,
) -> (u64, u64) {
    dist.fill(u32::MAX);
    queue.clear();
    dist[source.index()] = 0;
    queue.push_back(source.0);
    let (mut sum, mut reached) = (0u64, 1u64);
    while let Some(v) = queue.pop_front() {
        let next_dist = dist[v as usize] + 1;
        for &w in g.neighbors(ActorId(v)) {
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = next_dist;
                sum += next_dist as u64;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    (sum, reached)
}

/// `(distance sum, nodes reached)` for each source, in source order.
pub fn distance_sums_sequential(g: &CoStarGraph, sources: &[ActorId]) -> Vec<(u64, u64)> {
    let mut dist = vec![u32::MAX; g.node_count()];
    let mut queue = VecDeque::new();
    sources
        .iter()
        .map(|&s| distance_sum_one(g, s, &mut dist, &mut queue))
        .collect()
}

/// Parallel [`distance_sums_sequential`]; outputs are integers, so worker
/// count cannot change them.
#[cfg(feature = "parallel")]
pub fn distance_sums_parallel(g: &CoStarGraph, sources: &[ActorId]) -> Vec<(u64, u64)> {
    sources
        .par_chunks(SOURCE_CHUNK)
        .flat_map_iter(|chunk| {
            let mut dist = vec![u32::MAX; g.node_count()];
            let mut queue = VecDeque::new();
            chunk
                .iter()
                .map(|&s| distance_sum_one(g, s, &mut dist, &mut queue))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// `(distance sum, nodes reached)` for each source, in source order.
pub fn distance_sums(g: &CoStarGraph, sources: &[ActorId]) -> Vec<(u64, u64)> {
    #[cfg(feature = "parallel")]
    {
        distance_sums_parallel(g, sources)
    }
    #[cfg(not(feature = "parallel"))]
    {
        distance_sums_sequential(g, sources)
    }
}
