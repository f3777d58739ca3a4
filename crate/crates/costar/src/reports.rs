//! Ranked tables: movies per actor, acting partnerships, and the per-decade
//! centrality pipeline.

use serde::Serialize;

use crate::centrality::{betweenness_sampled, closeness_top, degree_centrality};
use crate::components::largest_component;
use crate::error::Result;
use crate::graph::{build_graph, ActorId, ActorTable, CoStarGraph};
use crate::ingest::{filter_by_decade, MovieRecord};

/// A ranked value: integer counts for tallies, floats for centrality scores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum RankValue {
    Count(u64),
    Score(f64),
}

impl RankValue {
    fn as_f64(self) -> f64 {
        match self {
            RankValue::Count(c) => c as f64,
            RankValue::Score(s) => s,
        }
    }
}

impl std::fmt::Display for RankValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RankValue::Count(c) => write!(f, "{c}"),
            RankValue::Score(s) => write!(f, "{s}"),
        }
    }
}

/// Rows sorted descending by value, ties by label ascending.
#[derive(Debug, Clone, Serialize)]
pub struct RankedTable {
    pub title: String,
    /// What the table was computed from.
    pub provenance: String,
    pub rows: Vec<(String, RankValue)>,
}

impl RankedTable {
    fn new(title: &str, provenance: String, mut rows: Vec<(String, RankValue)>) -> RankedTable {
        rows.sort_by(|a, b| {
            b.1.as_f64()
                .total_cmp(&a.1.as_f64())
                .then_with(|| a.0.cmp(&b.0))
        });
        RankedTable {
            title: title.to_string(),
            provenance,
            rows,
        }
    }

    pub fn truncated(mut self, limit: usize) -> RankedTable {
        self.rows.truncate(limit);
        self
    }
}

/// Number of distinct movie titles on each actor's incident edges.
///
/// An actor whose casts never contained a second distinct name is not in the
/// graph and therefore not in this table.
pub fn movies_per_actor(g: &CoStarGraph, table: &ActorTable) -> RankedTable {
    let rows = (0..g.node_count() as u32)
        .map(|v| {
            let id = ActorId(v);
            (
                table.name(id).to_owned(),
                RankValue::Count(g.distinct_title_count(id) as u64),
            )
        })
        .collect();
    RankedTable::new(
        "Movies per actor",
        format!("multigraph of {} actors", g.node_count()),
        rows,
    )
}

/// Shared-movie counts for every adjacent pair, labelled
/// `"<name> and <name>"` with names in id order.
pub fn top_partnerships(g: &CoStarGraph, table: &ActorTable) -> RankedTable {
    let mut rows = Vec::with_capacity(g.simple_edge_count() as usize);
    for v in 0..g.node_count() as u32 {
        for (w, mult) in g.adjacency(ActorId(v)) {
            if w.0 > v {
                rows.push((
                    format!("{} and {}", table.name(ActorId(v)), table.name(w)),
                    RankValue::Count(mult as u64),
                ));
            }
        }
    }
    RankedTable::new(
        "Movies per acting partnership",
        format!("multigraph of {} actors", g.node_count()),
        rows,
    )
}

/// The three per-decade centrality tables.
#[derive(Debug, Clone, Serialize)]
pub struct DecadeReport {
    pub decade: i64,
    pub degree: RankedTable,
    pub betweenness: RankedTable,
    pub closeness: RankedTable,
}

const DECADE_TOP: usize = 20;

/// Builds the decade's graph, restricts to its largest component, and ranks
/// actors by degree, sampled betweenness, and closeness (computed over the
/// top `limit` betweenness candidates). Tables hold the top twenty rows.
///
/// `k` and `limit` are clamped to the component size. A decade with no
/// pair-producing movies yields empty tables.
pub fn decade_report(
    records: &[MovieRecord],
    decade: i64,
    k: usize,
    seed: u64,
    limit: usize,
) -> Result<DecadeReport> {
    let decade_records = filter_by_decade(records, decade);
    let (full, table) = build_graph(&decade_records);

    let empty = |title: &str| RankedTable {
        title: title.to_string(),
        provenance: format!("{decade}s: no movies with co-starring casts"),
        rows: Vec::new(),
    };
    if full.is_empty() {
        return Ok(DecadeReport {
            decade,
            degree: empty("Degree centrality"),
            betweenness: empty("Betweenness centrality"),
            closeness: empty("Closeness centrality"),
        });
    }

    let (g, remap) = largest_component(&full)?;
    let names = table.project(&remap);
    let n = g.node_count();
    let k = k.min(n).max(1);
    let provenance = format!("{decade}s: largest component, {n} actors; k={k} seed={seed}");

    let degree = degree_centrality(&g)?;
    let betweenness = betweenness_sampled(&g, k, seed)?;
    let candidates: Vec<ActorId> = betweenness.ranked(&names).iter().map(|&(v, _)| v).collect();
    let closeness = closeness_top(&g, &candidates, limit.min(candidates.len()))?;

    let to_table = |title: &str, vector: &crate::centrality::CentralityVector| {
        let rows = vector
            .ranked(&names)
            .into_iter()
            .map(|(v, s)| (names.name(v).to_owned(), RankValue::Score(s)))
            .collect();
        RankedTable::new(title, provenance.clone(), rows).truncated(DECADE_TOP)
    };

    Ok(DecadeReport {
        decade,
        degree: to_table("Degree centrality", &degree),
        betweenness: to_table("Betweenness centrality", &betweenness),
        closeness: to_table("Closeness centrality", &closeness),
    })
}
