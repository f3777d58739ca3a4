//! Shortest-path queries with movie-title explanations, and per-source hop
//! distributions.
//!
//! All traversal is breadth-first over the simple-graph view; parallel edges
//! never shorten a path. BFS visits neighbors in ascending id order, so the
//! reported path is the same on every run.

use std::collections::VecDeque;

use crate::graph::{ActorId, ActorTable, CoStarGraph};

/// One step of a path: `from` appeared in `title` with `to`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Hop {
    pub from: String,
    pub title: String,
    pub to: String,
}

/// A shortest path rendered as actor/movie hops. The path length is the
/// number of hops; consecutive hops chain end to end.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct PathExplanation {
    pub hops: Vec<Hop>,
}

impl PathExplanation {
    pub fn len(&self) -> usize {
        self.hops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hops.is_empty()
    }
}

/// Outcome of a shortest-path query between two actor names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathOutcome {
    Found(PathExplanation),
    /// At least one of the names is absent from the network.
    NotInNetwork,
    /// Both actors exist but sit in different components.
    NoPath,
}

/// Minimum-hop path from `u` to `v`, with one movie title per hop.
///
/// Among equal-length paths this returns the one BFS finds when visiting
/// neighbors in ascending id order; each hop reports the first title on the
/// edge in record order. `u = v` yields an empty explanation.
pub fn shortest_path(g: &CoStarGraph, table: &ActorTable, u: &str, v: &str) -> PathOutcome {
    let (Some(src), Some(dst)) = (table.id(u), table.id(v)) else {
        return PathOutcome::NotInNetwork;
    };
    if src == dst {
        return PathOutcome::Found(PathExplanation { hops: Vec::new() });
    }

    let mut parent: Vec<u32> = vec![u32::MAX; g.node_count()];
    let mut queue = VecDeque::new();
    parent[src.index()] = src.0;
    queue.push_back(src.0);

    'search: while let Some(cur) = queue.pop_front() {
        for &next in g.neighbors(ActorId(cur)) {
            if parent[next as usize] == u32::MAX {
                parent[next as usize] = cur;
                if next == dst.0 {
                    break 'search;
                }
                queue.push_back(next);
            }
        }
    }

    if parent[dst.index()] == u32::MAX {
        return PathOutcome::NoPath;
    }

    let mut ids = vec![dst.0];
    while *ids.last().unwrap() != src.0 {
        ids.push(parent[*ids.last().unwrap() as usize]);
    }
    ids.reverse();

    let hops = ids
        .windows(2)
        .map(|pair| {
            let (a, b) = (ActorId(pair[0]), ActorId(pair[1]));
            Hop {
                from: table.name(a).to_owned(),
                // Adjacent by construction, so a first title always exists.
                title: g.first_title(a, b).unwrap().to_owned(),
                to: table.name(b).to_owned(),
            }
        })
        .collect();
    PathOutcome::Found(PathExplanation { hops })
}

/// Number of actors at each BFS distance from a source, distance 0 included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopDistribution {
    counts: Vec<u64>,
}

impl HopDistribution {
    /// Count of actors exactly `distance` hops away.
    pub fn get(&self, distance: usize) -> u64 {
        self.counts.get(distance).copied().unwrap_or(0)
    }

    /// Largest distance with a nonzero count.
    pub fn max_distance(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    /// Sum of all counts; the size of the source's component.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `(distance, count)` pairs in ascending distance order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().copied().enumerate()
    }

    /// Sum of distances from the source to every reachable node.
    pub fn distance_sum(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(d, &c)| d as u64 * c)
            .sum()
    }
}

/// Exact BFS level sizes from `source`.
pub fn hop_distribution(g: &CoStarGraph, source: ActorId) -> HopDistribution {
    let mut dist: Vec<u32> = vec![u32::MAX; g.node_count()];
    let mut queue = VecDeque::new();
    dist[source.index()] = 0;
    queue.push_back(source.0);
    let mut counts = vec![1u64];

    while let Some(cur) = queue.pop_front() {
        for &next in g.neighbors(ActorId(cur)) {
            if dist[next as usize] == u32::MAX {
                let d = dist[cur as usize] + 1;
                dist[next as usize] = d;
                if counts.len() == d as usize {
                    counts.push(0);
                }
                counts[d as usize] += 1;
                queue.push_back(next);
            }
        }
    }
    HopDistribution { counts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::ingest::parse_text;

    const BATMAN: &str = include_str!("../testdata/batman.json");

    fn batman() -> (CoStarGraph, ActorTable) {
        let (records, _) = parse_text(BATMAN);
        build_graph(&records)
    }

    #[test]
    fn neeson_to_ledger_goes_through_bale() {
        let (g, table) = batman();
        let PathOutcome::Found(path) = shortest_path(&g, &table, "Liam Neeson", "Heath Ledger")
        else {
            panic!("expected a path");
        };
        assert_eq!(path.len(), 2);
        // The tie rule picks the shared co-star with the smallest id.
        assert_eq!(
            path.hops[0],
            Hop {
                from: "Liam Neeson".into(),
                title: "Batman Begins".into(),
                to: "Christian Bale".into(),
            }
        );
        assert_eq!(
            path.hops[1],
            Hop {
                from: "Christian Bale".into(),
                title: "The Dark Knight".into(),
                to: "Heath Ledger".into(),
            }
        );
    }

    #[test]
    fn hops_chain_and_titles_are_verifiable() {
        let (g, table) = batman();
        let PathOutcome::Found(path) = shortest_path(&g, &table, "Katie Holmes", "Tom Hardy")
        else {
            panic!("expected a path");
        };
        for pair in path.hops.windows(2) {
            assert_eq!(pair[0].to, pair[1].from);
        }
        for hop in &path.hops {
            let a = table.id(&hop.from).unwrap();
            let b = table.id(&hop.to).unwrap();
            assert!(g.edge_titles(a, b).contains(&hop.title.as_str()));
        }
    }

    #[test]
    fn unknown_names_are_not_in_network() {
        let (g, table) = batman();
        assert_eq!(
            shortest_path(&g, &table, "Homer Simpson", "Neil Armstrong"),
            PathOutcome::NotInNetwork
        );
        assert_eq!(
            shortest_path(&g, &table, "Christian Bale", "Neil Armstrong"),
            PathOutcome::NotInNetwork
        );
    }

    #[test]
    fn same_actor_is_an_empty_path() {
        let (g, table) = batman();
        let PathOutcome::Found(path) =
            shortest_path(&g, &table, "Christian Bale", "Christian Bale")
        else {
            panic!("expected a path");
        };
        assert!(path.is_empty());
    }

    #[test]
    fn disconnected_actors_have_no_path() {
        let (records, _) = parse_text(
            "{\"title\":\"M1\",\"cast\":[\"a\",\"b\"],\"year\":2000}\n{\"title\":\"M2\",\"cast\":[\"c\",\"d\"],\"year\":2000}",
        );
        let (g, table) = build_graph(&records);
        assert_eq!(shortest_path(&g, &table, "a", "c"), PathOutcome::NoPath);
    }

    #[test]
    fn bale_reaches_everyone_in_one_hop() {
        let (g, table) = batman();
        let bale = table.id("Christian Bale").unwrap();
        let dist = hop_distribution(&g, bale);
        assert_eq!(dist.get(0), 1);
        assert_eq!(dist.get(1), 16);
        assert_eq!(dist.max_distance(), 1);
        assert_eq!(dist.total(), 17);
    }

    #[test]
    fn neeson_reaches_the_rest_in_two() {
        let (g, table) = batman();
        let neeson = table.id("Liam Neeson").unwrap();
        let dist = hop_distribution(&g, neeson);
        assert_eq!(dist.get(0), 1);
        assert_eq!(dist.get(1), 9);
        assert_eq!(dist.get(2), 7);
        assert_eq!(dist.distance_sum(), 23);
    }

    #[test]
    fn distance_one_count_equals_degree() {
        let (g, _) = batman();
        for v in 0..g.node_count() as u32 {
            let dist = hop_distribution(&g, ActorId(v));
            assert_eq!(dist.get(1) as usize, g.degree(ActorId(v)));
        }
    }
}
