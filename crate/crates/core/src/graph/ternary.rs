use std::collections::HashMap;

use super::{Edge, Graph, VertexId};

/// Degree-bounded version of a graph: every vertex of degree greater than
/// three is replaced by a cycle of dummy edges, one cycle vertex per
/// incident edge. Dummy edges compare strictly below every real edge in the
/// spanning-forest order, so they are always chosen first and contracting
/// them recovers the original graph.
#[derive(Debug, Clone)]
pub struct TernarizedGraph {
    pub base: Graph,
    /// New vertex id -> original vertex id.
    pub origin: Vec<VertexId>,
    /// Per-edge flag marking cycle edges.
    pub is_dummy: Vec<bool>,
    /// For real edges, the original edge id.
    pub real_eid: Vec<Option<u32>>,
}

impl TernarizedGraph {
    /// Strict total order on edges: dummies first, then `(weight, id)`.
    #[inline]
    pub fn msf_key(&self, eid: u32) -> (u8, u64, u32) {
        let dummy = self.is_dummy[eid as usize];
        (u8::from(!dummy), self.base.edge(eid).w, eid)
    }
}

/// Replaces every vertex of degree `> 3` with a cycle of length `deg(v)`.
///
/// Cycle vertices are ordered by ascending neighbor id, which makes the
/// construction deterministic. Vertices of degree `<= 3` are kept as-is.
pub fn ternarize(g: &Graph) -> TernarizedGraph {
    let n = g.n();
    let mut origin: Vec<VertexId> = Vec::new();
    // (original vertex, original edge id) -> attachment vertex in the output.
    let mut attach: HashMap<(VertexId, u32), VertexId> = HashMap::new();
    let mut kept: Vec<Option<VertexId>> = vec![None; n];
    let mut dummy_pairs: Vec<(VertexId, VertexId)> = Vec::new();

    for v in 0..n as u32 {
        let deg = g.degree(v);
        if deg <= 3 {
            let id = origin.len() as u32;
            origin.push(v);
            kept[v as usize] = Some(id);
            continue;
        }
        let mut incident: Vec<(VertexId, u32)> = g.neighbors(v).to_vec();
        incident.sort_unstable();
        let first = origin.len() as u32;
        for (_, eid) in incident {
            let cv = origin.len() as u32;
            origin.push(v);
            attach.insert((v, eid), cv);
        }
        let last = origin.len() as u32 - 1;
        for cv in first..last {
            dummy_pairs.push((cv, cv + 1));
        }
        dummy_pairs.push((last, first));
    }

    let endpoint = |v: VertexId, eid: u32| -> VertexId {
        kept[v as usize].unwrap_or_else(|| attach[&(v, eid)])
    };

    let mut edges: Vec<Edge> = Vec::with_capacity(dummy_pairs.len() + g.m());
    let mut is_dummy = Vec::with_capacity(edges.capacity());
    let mut real_eid: Vec<Option<u32>> = Vec::with_capacity(edges.capacity());
    for &(a, b) in &dummy_pairs {
        let id = edges.len() as u32;
        edges.push(Edge { u: a.min(b), v: a.max(b), w: 0, id });
        is_dummy.push(true);
        real_eid.push(None);
    }
    for e in g.edges() {
        let a = endpoint(e.u, e.id);
        let b = endpoint(e.v, e.id);
        let id = edges.len() as u32;
        edges.push(Edge { u: a.min(b), v: a.max(b), w: g.msf_weight(e.id), id });
        is_dummy.push(false);
        real_eid.push(Some(e.id));
    }
    let base = Graph::from_edges(origin.len(), edges, true);
    TernarizedGraph { base, origin, is_dummy, real_eid }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{contract_graph, ContractionMap};

    #[test]
    fn low_degree_graph_is_unchanged() {
        let g = Graph::new(4, vec![(0, 1, 1), (0, 2, 2), (0, 3, 3)], true).unwrap();
        let t = ternarize(&g);
        assert_eq!(t.base.n(), 4);
        assert_eq!(t.base.m(), 3);
        assert!(t.is_dummy.iter().all(|&d| !d));
    }

    #[test]
    fn k14_center_becomes_four_cycle() {
        let g = Graph::new(5, vec![(0, 1, 1), (0, 2, 2), (0, 3, 3), (0, 4, 4)], true).unwrap();
        let t = ternarize(&g);
        assert_eq!(t.base.n(), 8);
        assert_eq!(t.base.m(), 8);
        assert_eq!(t.base.max_degree(), 3);
        assert_eq!(t.is_dummy.iter().filter(|&&d| d).count(), 4);
        for v in 0..t.base.n() as u32 {
            assert!(t.base.degree(v) <= 3);
        }
    }

    #[test]
    fn large_star_scan() {
        // Star on 100 vertices: the 99-degree center becomes a 99-cycle,
        // so 99 leaves + 99 cycle vertices, 99 dummy + 99 real edges.
        let pairs: Vec<(u32, u32, u64)> = (1..100).map(|i| (0, i, i as u64)).collect();
        let g = Graph::new(100, pairs, true).unwrap();
        let t = ternarize(&g);
        assert_eq!(t.base.max_degree(), 3);
        assert_eq!(t.is_dummy.iter().filter(|&&d| d).count(), 99);
        assert_eq!(t.is_dummy.iter().filter(|&&d| !d).count(), 99);
        assert_eq!(t.base.n(), 99 + 99);
    }

    #[test]
    fn contracting_dummies_recovers_original() {
        let g = Graph::new(
            6,
            vec![
                (0, 1, 10),
                (0, 2, 11),
                (0, 3, 12),
                (0, 4, 13),
                (4, 5, 14),
                (1, 2, 15),
            ],
            true,
        )
        .unwrap();
        let t = ternarize(&g);
        // Contract each dummy cycle to the smallest ternarized id sharing
        // its origin; groups are laid out in origin order, so the dense
        // relabeling maps group k back to original vertex k.
        let mut group_min = vec![u32::MAX; g.n()];
        for (v, &orig) in t.origin.iter().enumerate() {
            group_min[orig as usize] = group_min[orig as usize].min(v as u32);
        }
        let map = ContractionMap::from_vec(
            t.origin.iter().map(|&o| group_min[o as usize]).collect(),
        );
        let c = contract_graph(&t.base, &map, false);
        let mut got: Vec<(u32, u32, u64)> = c
            .graph
            .edges()
            .iter()
            .map(|e| (e.u.min(e.v), e.u.max(e.v), e.w))
            .collect();
        got.sort_unstable();
        let mut want: Vec<(u32, u32, u64)> =
            g.edges().iter().map(|e| (e.u, e.v, e.w)).collect();
        want.sort_unstable();
        assert_eq!(got, want);
    }
}
