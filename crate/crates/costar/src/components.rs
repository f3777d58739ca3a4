//! Connected components of the simple-graph view.

use crate::error::{Error, Result};
use crate::graph::{ActorId, CoStarGraph, IdRemap};

/// Per-node component assignment.
///
/// Component ids run from 0 in descending size order; equal sizes order by
/// the smallest actor id the component contains. Sizes sum to the node count.
#[derive(Debug, Clone)]
pub struct ComponentLabeling {
    component_of: Vec<u32>,
    sizes: Vec<usize>,
}

impl ComponentLabeling {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    /// Component sizes, descending.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn component_of(&self, v: ActorId) -> u32 {
        self.component_of[v.index()]
    }

    /// Members of component `id`, ascending.
    pub fn members(&self, id: u32) -> Vec<ActorId> {
        self.component_of
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == id)
            .map(|(v, _)| ActorId(v as u32))
            .collect()
    }
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut v: u32) -> u32 {
        while self.parent[v as usize] != v {
            // Path halving.
            let grandparent = self.parent[self.parent[v as usize] as usize];
            self.parent[v as usize] = grandparent;
            v = grandparent;
        }
        v
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }
}

/// Labels every node with its connected component.
pub fn connected_components(g: &CoStarGraph) -> ComponentLabeling {
    let n = g.node_count();
    let mut uf = UnionFind::new(n);
    for v in 0..n as u32 {
        for &w in g.neighbors(ActorId(v)) {
            if w > v {
                uf.union(v, w);
            }
        }
    }

    // Scanning ids in ascending order means each root is first seen at its
    // component's smallest member, so first-seen order is the size tiebreak.
    let mut order_of_root: Vec<u32> = vec![u32::MAX; n];
    let mut roots: Vec<u32> = Vec::new();
    let mut component_of = vec![0u32; n];
    for v in 0..n as u32 {
        let root = uf.find(v);
        if order_of_root[root as usize] == u32::MAX {
            order_of_root[root as usize] = roots.len() as u32;
            roots.push(root);
        }
        component_of[v as usize] = order_of_root[root as usize];
    }

    let mut by_size: Vec<usize> = (0..roots.len()).collect();
    // Stable sort: ties keep first-seen (smallest member) order.
    by_size.sort_by_key(|&i| std::cmp::Reverse(uf.size[roots[i] as usize]));

    let mut final_id = vec![0u32; roots.len()];
    let mut sizes = Vec::with_capacity(roots.len());
    for (new_id, &seen_idx) in by_size.iter().enumerate() {
        final_id[seen_idx] = new_id as u32;
        sizes.push(uf.size[roots[seen_idx] as usize] as usize);
    }
    for c in &mut component_of {
        *c = final_id[*c as usize];
    }

    ComponentLabeling {
        component_of,
        sizes,
    }
}

/// Induced subgraph of the largest component.
pub fn largest_component(g: &CoStarGraph) -> Result<(CoStarGraph, IdRemap)> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let labeling = connected_components(g);
    let members = labeling.members(0);
    Ok(g.subgraph(&members))
}

/// True when every pair of nodes is joined by a path; false for the empty
/// graph.
pub fn is_connected(g: &CoStarGraph) -> bool {
    !g.is_empty() && connected_components(g).count() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::ingest::{parse_text, MovieRecord};

    const BATMAN: &str = include_str!("../testdata/batman.json");

    fn record(title: &str, cast: &[&str]) -> MovieRecord {
        MovieRecord {
            title: title.into(),
            cast: cast.iter().map(|s| s.to_string()).collect(),
            year: Some(2000),
        }
    }

    #[test]
    fn batman_graph_is_one_component() {
        let (records, _) = parse_text(BATMAN);
        let (g, _) = build_graph(&records);
        let labeling = connected_components(&g);
        assert_eq!(labeling.count(), 1);
        assert_eq!(labeling.sizes(), &[17]);
        assert!(is_connected(&g));
    }

    #[test]
    fn empty_graph_has_no_components() {
        let (g, _) = build_graph(&[]);
        assert_eq!(connected_components(&g).count(), 0);
        assert!(!is_connected(&g));
        assert!(largest_component(&g).is_err());
    }

    #[test]
    fn size_ties_break_by_smallest_member() {
        // Two triangles and one pendant edge; sizes 3, 3, 2.
        let (g, table) = build_graph(&[
            record("T1", &["a", "b", "c"]),
            record("T2", &["d", "e", "f"]),
            record("E", &["g", "h"]),
        ]);
        let labeling = connected_components(&g);
        assert_eq!(labeling.count(), 3);
        assert_eq!(labeling.sizes(), &[3, 3, 2]);
        let a = table.id("a").unwrap();
        let d = table.id("d").unwrap();
        let g_id = table.id("g").unwrap();
        assert_eq!(labeling.component_of(a), 0);
        assert_eq!(labeling.component_of(d), 1);
        assert_eq!(labeling.component_of(g_id), 2);

        let (largest, remap) = largest_component(&g).unwrap();
        assert_eq!(largest.node_count(), 3);
        assert_eq!(remap.parent_of(ActorId(0)), a);
        assert!(is_connected(&largest));
    }

    #[test]
    fn disjoint_casts_are_separate_components() {
        let (g, _) = build_graph(&[record("M1", &["a", "b"]), record("M2", &["c", "d", "e"])]);
        let labeling = connected_components(&g);
        assert_eq!(labeling.count(), 2);
        assert_eq!(labeling.sizes(), &[3, 2]);
        assert!(!is_connected(&g));
    }

    #[test]
    fn single_pair_graph_is_connected() {
        let (g, _) = build_graph(&[record("M", &["a", "b"])]);
        assert!(is_connected(&g));
    }
}
