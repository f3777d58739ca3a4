//! The co-star graph: actors as nodes, one edge per shared movie.
//!
//! A single structure serves both the multigraph view (per-pair multiplicity
//! and movie-title lists) and the simple-graph view (deduplicated adjacency)
//! so the edge set is built only once. Adjacency is stored in CSR form with
//! neighbor lists sorted by id, which keeps traversals cache-friendly and
//! every downstream ordering deterministic.

use std::collections::HashMap;
use std::sync::Arc;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::ingest::MovieRecord;

/// Dense non-negative actor index, assigned in first-appearance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActorId(pub u32);

impl ActorId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Bijective mapping between actor names and dense [`ActorId`]s.
#[derive(Debug, Clone, Default)]
pub struct ActorTable {
    ids: HashMap<String, ActorId>,
    names: Vec<String>,
}

impl ActorTable {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn id(&self, name: &str) -> Option<ActorId> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, id: ActorId) -> &str {
        &self.names[id.index()]
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    pub(crate) fn intern(&mut self, name: &str) -> ActorId {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = ActorId(self.names.len() as u32);
        self.names.push(name.to_owned());
        self.ids.insert(name.to_owned(), id);
        id
    }

    /// Table for a subgraph: new dense ids, same names.
    pub fn project(&self, remap: &IdRemap) -> ActorTable {
        let mut table = ActorTable::default();
        for &old in &remap.to_parent {
            table.intern(self.name(old));
        }
        table
    }
}

/// Maps the dense ids of a subgraph back to ids of the graph it was cut from.
///
/// New ids preserve the relative order of the parent ids, so sorted adjacency
/// stays sorted after remapping.
#[derive(Debug, Clone)]
pub struct IdRemap {
    to_parent: Vec<ActorId>,
}

impl IdRemap {
    pub fn len(&self) -> usize {
        self.to_parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_parent.is_empty()
    }

    /// Parent-graph id of subgraph node `new`.
    pub fn parent_of(&self, new: ActorId) -> ActorId {
        self.to_parent[new.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = ActorId> + '_ {
        self.to_parent.iter().copied()
    }
}

/// Undirected co-star graph over dense actor ids.
///
/// Each unordered pair of adjacent actors carries the ordered list of movie
/// titles that created it; the pair's multiplicity is the length of that
/// list. There are no self-loops. Both directions of every edge are stored.
#[derive(Debug, Clone)]
pub struct CoStarGraph {
    /// CSR row offsets, length `n + 1`.
    adj_offsets: Vec<usize>,
    /// Neighbor ids, sorted ascending within each row.
    neighbors: Vec<u32>,
    /// Start of each edge slot's title run in `title_ids`, length `neighbors.len() + 1`.
    /// An edge's multiplicity is the length of its run.
    title_offsets: Vec<usize>,
    /// Interned title ids per edge slot, in record order.
    title_ids: Vec<u32>,
    /// Interned title pool, shared with subgraphs.
    titles: Arc<Vec<String>>,
    multi_edges: u64,
    simple_edges: u64,
}

impl CoStarGraph {
    pub fn node_count(&self) -> usize {
        self.adj_offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.node_count() == 0
    }

    /// Parallel-edge count: one edge per (movie, actor pair).
    pub fn multi_edge_count(&self) -> u64 {
        self.multi_edges
    }

    /// Deduplicated edge count: one edge per adjacent pair.
    pub fn simple_edge_count(&self) -> u64 {
        self.simple_edges
    }

    /// Number of distinct co-stars of `v`.
    pub fn degree(&self, v: ActorId) -> usize {
        let i = v.index();
        self.adj_offsets[i + 1] - self.adj_offsets[i]
    }

    /// Neighbor ids of `v` in ascending order.
    #[inline]
    pub fn neighbors(&self, v: ActorId) -> &[u32] {
        &self.neighbors[self.adj_offsets[v.index()]..self.adj_offsets[v.index() + 1]]
    }

    /// `(neighbor, multiplicity)` pairs for `v`, neighbors ascending.
    pub fn adjacency(&self, v: ActorId) -> impl Iterator<Item = (ActorId, u32)> + '_ {
        let row = self.adj_offsets[v.index()]..self.adj_offsets[v.index() + 1];
        row.map(move |slot| {
            let mult = (self.title_offsets[slot + 1] - self.title_offsets[slot]) as u32;
            (ActorId(self.neighbors[slot]), mult)
        })
    }

    /// Edge slot index for the ordered pair `(u, v)`, if adjacent.
    fn slot(&self, u: ActorId, v: ActorId) -> Option<usize> {
        let row = &self.neighbors[self.adj_offsets[u.index()]..self.adj_offsets[u.index() + 1]];
        row.binary_search(&v.0)
            .ok()
            .map(|pos| self.adj_offsets[u.index()] + pos)
    }

    /// Number of movies shared by `u` and `v`; 0 when not adjacent.
    pub fn multiplicity(&self, u: ActorId, v: ActorId) -> u32 {
        debug_assert_ne!(u, v, "no self-loops");
        match self.slot(u, v) {
            Some(slot) => (self.title_offsets[slot + 1] - self.title_offsets[slot]) as u32,
            None => 0,
        }
    }

    /// Titles of the movies shared by `u` and `v`, in record order; empty
    /// when not adjacent.
    pub fn edge_titles(&self, u: ActorId, v: ActorId) -> Vec<&str> {
        debug_assert_ne!(u, v, "no self-loops");
        match self.slot(u, v) {
            Some(slot) => self.title_ids[self.title_offsets[slot]..self.title_offsets[slot + 1]]
                .iter()
                .map(|&t| self.titles[t as usize].as_str())
                .collect(),
            None => Vec::new(),
        }
    }

    /// First title on the `(u, v)` edge in record order.
    pub fn first_title(&self, u: ActorId, v: ActorId) -> Option<&str> {
        let slot = self.slot(u, v)?;
        let range = self.title_offsets[slot]..self.title_offsets[slot + 1];
        range
            .clone()
            .next()
            .map(|i| self.titles[self.title_ids[i] as usize].as_str())
    }

    /// Number of distinct movie titles across all of `v`'s incident edges.
    ///
    /// Two different records sharing one title count once, mirroring the
    /// label-set counting the ranked reports use.
    pub fn distinct_title_count(&self, v: ActorId) -> usize {
        let row = self.adj_offsets[v.index()]..self.adj_offsets[v.index() + 1];
        let mut ids: Vec<u32> = Vec::new();
        for slot in row {
            ids.extend(&self.title_ids[self.title_offsets[slot]..self.title_offsets[slot + 1]]);
        }
        ids.sort_unstable();
        ids.dedup();
        ids.len()
    }

    /// Induced subgraph on `nodes`, with dense reindexed ids.
    ///
    /// Multiplicities and title lists are preserved; the title pool is
    /// shared with the parent graph.
    pub fn subgraph(&self, nodes: &[ActorId]) -> (CoStarGraph, IdRemap) {
        let mut to_parent: Vec<ActorId> = nodes.to_vec();
        to_parent.sort_unstable();
        to_parent.dedup();

        let mut to_new: Vec<u32> = vec![u32::MAX; self.node_count()];
        for (new, old) in to_parent.iter().enumerate() {
            to_new[old.index()] = new as u32;
        }

        let mut adj_offsets = Vec::with_capacity(to_parent.len() + 1);
        adj_offsets.push(0usize);
        let mut neighbors = Vec::new();
        let mut title_offsets = vec![0usize];
        let mut title_ids = Vec::new();
        let mut multi_edges = 0u64;

        for &old in &to_parent {
            let row = self.adj_offsets[old.index()]..self.adj_offsets[old.index() + 1];
            for slot in row {
                let nb = to_new[self.neighbors[slot] as usize];
                if nb == u32::MAX {
                    continue;
                }
                neighbors.push(nb);
                let titles =
                    &self.title_ids[self.title_offsets[slot]..self.title_offsets[slot + 1]];
                title_ids.extend_from_slice(titles);
                title_offsets.push(title_ids.len());
                multi_edges += titles.len() as u64;
            }
            adj_offsets.push(neighbors.len());
        }

        let graph = CoStarGraph {
            adj_offsets,
            simple_edges: neighbors.len() as u64 / 2,
            multi_edges: multi_edges / 2,
            neighbors,
            title_offsets,
            title_ids,
            titles: Arc::clone(&self.titles),
        };
        (graph, IdRemap { to_parent })
    }

    // Snapshot serialization needs the raw parts.
    #[allow(clippy::type_complexity)]
    pub(crate) fn parts(&self) -> (&[usize], &[u32], &[usize], &[u32], &[String]) {
        (
            &self.adj_offsets,
            &self.neighbors,
            &self.title_offsets,
            &self.title_ids,
            &self.titles,
        )
    }

    pub(crate) fn from_parts(
        adj_offsets: Vec<usize>,
        neighbors: Vec<u32>,
        title_offsets: Vec<usize>,
        title_ids: Vec<u32>,
        titles: Vec<String>,
    ) -> CoStarGraph {
        CoStarGraph {
            simple_edges: neighbors.len() as u64 / 2,
            multi_edges: title_ids.len() as u64 / 2,
            adj_offsets,
            neighbors,
            title_offsets,
            title_ids,
            titles: Arc::new(titles),
        }
    }
}

/// Builds the co-star graph from cleaned records.
///
/// Every unordered pair of distinct cast names in a record contributes one
/// parallel edge labelled with the record's title. Duplicate names within a
/// cast collapse to one node and never produce a self-loop. Actors whose
/// casts never contain a second distinct name stay out of the graph, so ids
/// are assigned in first-appearance order over pair-producing casts only.
pub fn build_graph(records: &[MovieRecord]) -> (CoStarGraph, ActorTable) {
    let mut table = ActorTable::default();
    let mut titles: Vec<String> = Vec::new();
    let mut title_ids: HashMap<String, u32> = HashMap::new();

    // Directed (src, dst, title) triples; both directions of every pair.
    let mut triples: Vec<(u32, u32, u32)> = Vec::new();
    let mut cast_ids: Vec<u32> = Vec::new();

    for record in records {
        cast_ids.clear();
        // Dedup within the cast, preserving first-occurrence order, before
        // interning: singleton casts must not mint ids.
        let mut distinct: Vec<&str> = Vec::with_capacity(record.cast.len());
        for name in &record.cast {
            if !distinct.contains(&name.as_str()) {
                distinct.push(name);
            }
        }
        if distinct.len() < 2 {
            continue;
        }

        let title = *title_ids.entry(record.title.clone()).or_insert_with(|| {
            titles.push(record.title.clone());
            (titles.len() - 1) as u32
        });
        cast_ids.extend(distinct.iter().map(|name| table.intern(name).0));

        for i in 0..cast_ids.len() {
            for j in (i + 1)..cast_ids.len() {
                triples.push((cast_ids[i], cast_ids[j], title));
                triples.push((cast_ids[j], cast_ids[i], title));
            }
        }
    }

    // Stable sort by (src, dst) keeps each pair's titles in record order.
    #[cfg(feature = "parallel")]
    triples.par_sort_by_key(|&(src, dst, _)| ((src as u64) << 32) | dst as u64);
    #[cfg(not(feature = "parallel"))]
    triples.sort_by_key(|&(src, dst, _)| ((src as u64) << 32) | dst as u64);

    let n = table.len();
    let mut adj_offsets = vec![0usize; n + 1];
    let mut neighbors: Vec<u32> = Vec::new();
    let mut title_offsets = vec![0usize];
    let mut edge_titles: Vec<u32> = Vec::with_capacity(triples.len());

    let mut i = 0;
    while i < triples.len() {
        let (src, dst, _) = triples[i];
        neighbors.push(dst);
        while i < triples.len() && triples[i].0 == src && triples[i].1 == dst {
            edge_titles.push(triples[i].2);
            i += 1;
        }
        title_offsets.push(edge_titles.len());
        adj_offsets[src as usize + 1] = neighbors.len();
    }
    // Rows for nodes with no outgoing slots after a gap: carry offsets forward.
    for v in 1..=n {
        if adj_offsets[v] < adj_offsets[v - 1] {
            adj_offsets[v] = adj_offsets[v - 1];
        }
    }

    let graph = CoStarGraph {
        adj_offsets,
        simple_edges: neighbors.len() as u64 / 2,
        multi_edges: edge_titles.len() as u64 / 2,
        neighbors,
        title_offsets,
        title_ids: edge_titles,
        titles: Arc::new(titles),
    };
    (graph, table)
}
