//! Shared test support: seeded graph generators and independent oracles.
//!
//! The oracles here deliberately avoid the library's algorithms: betweenness
//! enumerates shortest paths one by one from explicit predecessor lists,
//! distances come from Floyd–Warshall, and reachability from a plain BFS.

#![allow(dead_code)]
// Matrix oracles read clearest with index loops.
#![allow(clippy::needless_range_loop)]

use std::collections::VecDeque;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use costar::graph::{build_graph, ActorId, ActorTable, CoStarGraph};
use costar::ingest::MovieRecord;

pub fn record(title: &str, cast: &[&str]) -> MovieRecord {
    MovieRecord {
        title: title.into(),
        cast: cast.iter().map(|s| s.to_string()).collect(),
        year: Some(2000),
    }
}

/// One two-actor movie per edge, so the built graph is exactly this edge set.
pub fn records_from_edges(edges: &[(u32, u32)]) -> Vec<MovieRecord> {
    edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| MovieRecord {
            title: format!("M{i}"),
            cast: vec![format!("N{a}"), format!("N{b}")],
            year: Some(2000),
        })
        .collect()
}

/// A random connected graph: spanning tree over `n` nodes plus `extra`
/// random non-loop edges (duplicates allowed; they raise multiplicity).
pub fn random_connected_records(n: usize, extra: usize, seed: u64) -> Vec<MovieRecord> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(n - 1 + extra);
    for v in 1..n as u32 {
        edges.push((rng.random_range(0..v), v));
    }
    for _ in 0..extra {
        let a = rng.random_range(0..n as u32);
        let b = rng.random_range(0..n as u32);
        if a != b {
            edges.push((a, b));
        }
    }
    records_from_edges(&edges)
}

pub fn random_connected_graph(n: usize, extra: usize, seed: u64) -> (CoStarGraph, ActorTable) {
    build_graph(&random_connected_records(n, extra, seed))
}

/// Distance matrix by Floyd–Warshall; `NO_PATH` marks unreachable pairs.
pub const NO_PATH: u32 = u32::MAX / 2;

pub fn floyd_warshall(g: &CoStarGraph) -> Vec<Vec<u32>> {
    let n = g.node_count();
    let mut dist = vec![vec![NO_PATH; n]; n];
    for v in 0..n {
        dist[v][v] = 0;
        for &w in g.neighbors(ActorId(v as u32)) {
            dist[v][w as usize] = 1;
        }
    }
    for mid in 0..n {
        for a in 0..n {
            let through = dist[a][mid];
            if through == NO_PATH {
                continue;
            }
            for b in 0..n {
                let candidate = through + dist[mid][b];
                if candidate < dist[a][b] {
                    dist[a][b] = candidate;
                }
            }
        }
    }
    dist
}

/// Nodes reachable from `source` by plain BFS.
pub fn reachable_from(g: &CoStarGraph, source: ActorId) -> Vec<bool> {
    let mut seen = vec![false; g.node_count()];
    let mut queue = VecDeque::new();
    seen[source.index()] = true;
    queue.push_back(source.0);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(ActorId(v)) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Normalized betweenness by brute force: BFS predecessor lists per source,
/// then explicit enumeration of every shortest path, crediting each interior
/// node with `1 / (number of shortest paths for the pair)`.
pub fn betweenness_oracle(g: &CoStarGraph) -> Vec<f64> {
    let n = g.node_count();
    let mut raw = vec![0.0; n];

    for s in 0..n {
        let mut dist = vec![u32::MAX; n];
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut queue = VecDeque::new();
        dist[s] = 0;
        queue.push_back(s as u32);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(ActorId(v)) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[v as usize] + 1;
                    queue.push_back(w);
                }
                if dist[w as usize] == dist[v as usize] + 1 {
                    preds[w as usize].push(v);
                }
            }
        }

        for t in 0..n {
            if t == s || dist[t] == u32::MAX || dist[t] < 2 {
                continue;
            }
            let paths = enumerate_paths(&preds, s as u32, t as u32);
            let weight = 1.0 / paths.len() as f64;
            for path in &paths {
                for &v in &path[1..path.len() - 1] {
                    raw[v as usize] += weight;
                }
            }
        }
    }

    let norm = if n < 3 {
        0.0
    } else {
        1.0 / ((n - 1) as f64 * (n - 2) as f64 / 2.0)
    };
    // Each unordered pair was visited from both endpoints.
    raw.iter().map(|r| r / 2.0 * norm).collect()
}

/// All shortest `s -> t` paths, walked backward through predecessor lists.
fn enumerate_paths(preds: &[Vec<u32>], s: u32, t: u32) -> Vec<Vec<u32>> {
    let mut paths = Vec::new();
    let mut partial = vec![t];
    walk(preds, s, &mut partial, &mut paths);
    for p in &mut paths {
        p.reverse();
    }
    paths
}

fn walk(preds: &[Vec<u32>], s: u32, partial: &mut Vec<u32>, paths: &mut Vec<Vec<u32>>) {
    let last = *partial.last().unwrap();
    if last == s {
        paths.push(partial.clone());
        return;
    }
    for &p in &preds[last as usize] {
        partial.push(p);
        walk(preds, s, partial, paths);
        partial.pop();
    }
}
