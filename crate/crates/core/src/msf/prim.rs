use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use crate::error::Result;
use crate::graph::VertexRank;

use super::AdjEntry;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StopReason {
    /// The exploration cutoff was reached with frontier remaining.
    Explored,
    /// The component was explored completely.
    ComponentDone,
    /// The search was about to add an edge to a vertex earlier in the
    /// permutation.
    HitLowerRank(u32),
}

/// Outcome of one per-vertex search.
#[derive(Debug, Clone)]
pub struct PrimSearchResult {
    pub owner: u32,
    /// Forest edges discovered, in discovery order; includes the final edge
    /// when the search stopped at a lower-rank vertex.
    pub discovered: Vec<u32>,
    pub stop: StopReason,
    /// Vertices explored, owner first.
    pub visited: Vec<u32>,
}

/// Prim's algorithm from `owner`, stopping at `threshold` explored vertices,
/// at component exhaustion, or upon reaching a vertex before `owner` in the
/// rank order. `fetch_adj` supplies a vertex's incident edges sorted by the
/// strict edge order; it is called once per explored vertex, which is what
/// the query accounting of the caller meters.
pub fn prim_search<F>(
    owner: u32,
    ranks: &VertexRank,
    threshold: usize,
    mut fetch_adj: F,
) -> Result<PrimSearchResult>
where
    F: FnMut(u32) -> Result<Vec<AdjEntry>>,
{
    let mut visited_set = HashSet::new();
    visited_set.insert(owner);
    let mut visited = vec![owner];
    let mut discovered = Vec::new();
    // Min-heap over (edge key, neighbor).
    let mut frontier: BinaryHeap<Reverse<((u8, u64, u32), u32)>> = BinaryHeap::new();
    for entry in fetch_adj(owner)? {
        frontier.push(Reverse((entry.key, entry.nbr)));
    }
    loop {
        // Next crossing edge, skipping edges whose target is already inside.
        let next = loop {
            match frontier.pop() {
                None => break None,
                Some(Reverse((key, nbr))) => {
                    if !visited_set.contains(&nbr) {
                        break Some((key, nbr));
                    }
                }
            }
        };
        let (key, nbr) = match next {
            None => {
                return Ok(PrimSearchResult {
                    owner,
                    discovered,
                    stop: StopReason::ComponentDone,
                    visited,
                })
            }
            Some(x) => x,
        };
        if visited.len() >= threshold {
            return Ok(PrimSearchResult { owner, discovered, stop: StopReason::Explored, visited });
        }
        if ranks.before(nbr, owner) {
            // The crossing edge is part of the forest; the search then
            // defers to the earlier vertex.
            discovered.push(key.2);
            return Ok(PrimSearchResult {
                owner,
                discovered,
                stop: StopReason::HitLowerRank(nbr),
                visited,
            });
        }
        discovered.push(key.2);
        visited_set.insert(nbr);
        visited.push(nbr);
        for entry in fetch_adj(nbr)? {
            if !visited_set.contains(&entry.nbr) {
                frontier.push(Reverse((entry.key, entry.nbr)));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Graph};
    use crate::msf::wedges_from_graph;
    use crate::oracle;

    fn memory_fetch(g: &Graph) -> impl FnMut(u32) -> Result<Vec<AdjEntry>> + '_ {
        move |v| {
            Ok(g.neighbors(v)
                .iter()
                .map(|&(nbr, eid)| AdjEntry { key: (1, g.msf_weight(eid), eid), nbr })
                .collect())
        }
    }

    #[test]
    fn single_vertex_is_component_done() {
        let g = Graph::unweighted(1, vec![]).unwrap();
        let ranks = VertexRank::new(0);
        let r = prim_search(0, &ranks, 1, memory_fetch(&g)).unwrap();
        assert_eq!(r.stop, StopReason::ComponentDone);
        assert!(r.discovered.is_empty());
    }

    #[test]
    fn hand_simulated_path() {
        // Ranks with 1 first: search from 1 completes, searches from 0 and 2
        // stop at 1 with the connecting edge discovered.
        let seed = (0..)
            .find(|&s| {
                let r = VertexRank::new(s);
                r.before(1, 0) && r.before(1, 2)
            })
            .unwrap();
        let ranks = VertexRank::new(seed);
        let g = Graph::new(3, vec![(0, 1, 5), (1, 2, 6)], true).unwrap();
        let r1 = prim_search(1, &ranks, 3, memory_fetch(&g)).unwrap();
        assert_eq!(r1.stop, StopReason::ComponentDone);
        assert_eq!(r1.discovered.len(), 2);
        let r0 = prim_search(0, &ranks, 3, memory_fetch(&g)).unwrap();
        assert_eq!(r0.stop, StopReason::HitLowerRank(1));
        assert_eq!(r0.discovered, vec![0]);
        let r2 = prim_search(2, &ranks, 3, memory_fetch(&g)).unwrap();
        assert_eq!(r2.stop, StopReason::HitLowerRank(1));
        assert_eq!(r2.discovered, vec![1]);
    }

    #[test]
    fn discovered_edges_are_msf_edges() {
        // Every edge any search discovers belongs to the unique MSF.
        for seed in 0..10u64 {
            let base = generate::random_graph(40, 90, seed).unwrap();
            let g = generate::with_random_weights(&base, 12, seed + 1);
            let msf: std::collections::HashSet<u32> =
                oracle::kruskal(&g).into_iter().collect();
            let ranks = VertexRank::new(seed);
            for v in 0..g.n() as u32 {
                let r = prim_search(v, &ranks, 5, memory_fetch(&g)).unwrap();
                assert!(r.visited.len() <= 5);
                for id in r.discovered {
                    assert!(msf.contains(&id), "seed {seed} v {v} edge {id}");
                }
            }
        }
    }

    #[test]
    fn threshold_bounds_exploration() {
        let g = generate::path(50).unwrap();
        let seed = (0..)
            .find(|&s| (1..50).all(|v| VertexRank::new(s).before(0, v)))
            .unwrap_or(0);
        // From vertex 0 of a path everything has higher rank under this
        // seed, so only the cutoff can stop the search.
        let ranks = VertexRank::new(seed);
        let r = prim_search(0, &ranks, 8, memory_fetch(&g)).unwrap();
        if r.stop == StopReason::Explored {
            assert_eq!(r.visited.len(), 8);
        }
    }
}
