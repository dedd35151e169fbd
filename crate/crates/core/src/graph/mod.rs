//! Graph representation and construction helpers shared by all algorithms.

pub mod generate;
pub mod io;
mod rank;
mod ternary;

pub use rank::{EdgeRank, VertexRank};
pub use ternary::{ternarize, TernarizedGraph};

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type EdgeId = u32;
pub type Weight = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub w: Weight,
    pub id: EdgeId,
}

impl Edge {
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Immutable adjacency-list graph, no self-loops, no parallel edges.
///
/// Per-vertex neighbor lists are sorted by `(weight, edge id)` on weighted
/// graphs and by neighbor id otherwise.
#[derive(Debug, Clone)]
pub struct Graph {
    n: u32,
    edges: Vec<Edge>,
    adj_start: Vec<usize>,
    adj: Vec<(VertexId, EdgeId)>,
    weighted: bool,
}

impl Graph {
    /// Builds a graph from `(u, v, w)` triples. Duplicate pairs and
    /// self-loops are rejected; use [`io::load_edge_list`] for lenient input.
    pub fn new(n: usize, mut triples: Vec<(u32, u32, u64)>, weighted: bool) -> Result<Graph> {
        for t in &mut triples {
            if t.0 == t.1 {
                return Err(Error::InvalidSize(format!("self-loop at vertex {}", t.0)));
            }
            if t.0 > t.1 {
                std::mem::swap(&mut t.0, &mut t.1);
            }
            if t.1 as usize >= n {
                return Err(Error::InvalidSize(format!(
                    "vertex {} out of range for n={n}",
                    t.1
                )));
            }
        }
        let mut seen = std::collections::HashSet::with_capacity(triples.len());
        for &(u, v, _) in &triples {
            if !seen.insert((u, v)) {
                return Err(Error::InvalidSize(format!("duplicate edge ({u}, {v})")));
            }
        }
        let edges: Vec<Edge> = triples
            .into_iter()
            .enumerate()
            .map(|(id, (u, v, w))| Edge { u, v, w, id: id as u32 })
            .collect();
        Ok(Self::from_edges(n, edges, weighted))
    }

    /// Unweighted convenience constructor.
    pub fn unweighted(n: usize, pairs: Vec<(u32, u32)>) -> Result<Graph> {
        Self::new(n, pairs.into_iter().map(|(u, v)| (u, v, 0)).collect(), false)
    }

    pub(crate) fn from_edges(n: usize, edges: Vec<Edge>, weighted: bool) -> Graph {
        let mut deg = vec![0usize; n];
        for e in &edges {
            deg[e.u as usize] += 1;
            deg[e.v as usize] += 1;
        }
        let mut adj_start = Vec::with_capacity(n + 1);
        let mut acc = 0usize;
        adj_start.push(0);
        for d in &deg {
            acc += d;
            adj_start.push(acc);
        }
        let mut cursor = adj_start.clone();
        let mut adj = vec![(0u32, 0u32); acc];
        for e in &edges {
            adj[cursor[e.u as usize]] = (e.v, e.id);
            cursor[e.u as usize] += 1;
            adj[cursor[e.v as usize]] = (e.u, e.id);
            cursor[e.v as usize] += 1;
        }
        let mut g = Graph { n: n as u32, edges, adj_start, adj, weighted };
        g.sort_adjacency();
        g
    }

    fn sort_adjacency(&mut self) {
        let n = self.n as usize;
        for v in 0..n {
            let (s, e) = (self.adj_start[v], self.adj_start[v + 1]);
            if self.weighted {
                let edges = &self.edges;
                self.adj[s..e].sort_by_key(|&(_, eid)| (edges[eid as usize].w, eid));
            } else {
                self.adj[s..e].sort_unstable();
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id as usize]
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[self.adj_start[v as usize]..self.adj_start[v as usize + 1]]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj_start[v as usize + 1] - self.adj_start[v as usize]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Effective weight used for spanning-forest comparisons: the edge id
    /// doubles as the weight on unweighted graphs, making the MSF order a
    /// strict total order either way.
    pub fn msf_weight(&self, id: EdgeId) -> u64 {
        if self.weighted {
            self.edges[id as usize].w
        } else {
            id as u64
        }
    }

    /// Internal consistency between the edge list and the adjacency arrays.
    pub fn check_consistency(&self) -> bool {
        let mut count = vec![0usize; self.n as usize];
        for e in &self.edges {
            count[e.u as usize] += 1;
            count[e.v as usize] += 1;
        }
        (0..self.n as usize).all(|v| count[v] == self.degree(v as u32))
            && self.adj.len() == 2 * self.edges.len()
    }
}

/// Re-weights each edge `(u, v)` to `deg(u) + deg(v)`.
pub fn degree_weights(g: &Graph) -> Graph {
    let triples = g
        .edges()
        .iter()
        .map(|e| (e.u, e.v, (g.degree(e.u) + g.degree(e.v)) as u64))
        .collect();
    Graph::new(g.n(), triples, true).expect("re-weighting preserves validity")
}

/// Vertex-to-representative mapping produced by contraction and pointer
/// jumping. Total on the vertex set it was built for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionMap {
    repr: Vec<VertexId>,
}

impl ContractionMap {
    pub fn identity(n: usize) -> Self {
        ContractionMap { repr: (0..n as u32).collect() }
    }

    pub fn from_vec(repr: Vec<VertexId>) -> Self {
        ContractionMap { repr }
    }

    pub fn len(&self) -> usize {
        self.repr.len()
    }

    pub fn is_empty(&self) -> bool {
        self.repr.is_empty()
    }

    pub fn of(&self, v: VertexId) -> VertexId {
        self.repr[v as usize]
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.repr
    }

    /// Distinct representatives, sorted.
    pub fn representatives(&self) -> Vec<VertexId> {
        let mut rs: Vec<VertexId> = self.repr.clone();
        rs.sort_unstable();
        rs.dedup();
        rs
    }

    pub fn component_count(&self) -> usize {
        self.representatives().len()
    }
}

/// Result of contracting a graph: the quotient graph, the original edge id
/// behind each surviving edge, and the dense relabeling of representatives.
#[derive(Debug, Clone)]
pub struct ContractedGraph {
    pub graph: Graph,
    /// For every edge id of `graph`, the id of the original edge it kept.
    pub orig_eid: Vec<EdgeId>,
    /// Old vertex id -> new dense id, `u32::MAX` for dropped vertices.
    pub vertex_map: Vec<u32>,
}

/// Contracts `g` along `map`. Parallel edges keep the minimum `(weight, id)`
/// original; self-loops disappear; isolated representatives are dropped when
/// `drop_isolated` is set.
pub fn contract_graph(g: &Graph, map: &ContractionMap, drop_isolated: bool) -> ContractedGraph {
    assert_eq!(map.len(), g.n(), "contraction map must be total");
    let mut best: std::collections::HashMap<(u32, u32), (u64, EdgeId)> =
        std::collections::HashMap::new();
    for e in g.edges() {
        let (a, b) = (map.of(e.u), map.of(e.v));
        if a == b {
            continue;
        }
        let key = (a.min(b), a.max(b));
        let cand = (g.msf_weight(e.id), e.id);
        match best.get_mut(&key) {
            Some(cur) if *cur <= cand => {}
            Some(cur) => *cur = cand,
            None => {
                best.insert(key, cand);
            }
        }
    }
    // Dense relabeling over surviving representatives.
    let mut reps: Vec<u32> = if drop_isolated {
        let mut rs: Vec<u32> = best.keys().flat_map(|&(a, b)| [a, b]).collect();
        rs.sort_unstable();
        rs.dedup();
        rs
    } else {
        map.representatives()
    };
    reps.sort_unstable();
    let mut rep_new = vec![u32::MAX; g.n()];
    for (new_id, &r) in reps.iter().enumerate() {
        rep_new[r as usize] = new_id as u32;
    }
    let vertex_map: Vec<u32> = (0..g.n())
        .map(|v| rep_new[map.of(v as u32) as usize])
        .collect();
    let mut kept: Vec<((u32, u32), (u64, EdgeId))> = best.into_iter().collect();
    kept.sort_unstable();
    let mut orig_eid = Vec::with_capacity(kept.len());
    let edges: Vec<Edge> = kept
        .into_iter()
        .enumerate()
        .map(|(id, ((a, b), (w, orig)))| {
            orig_eid.push(orig);
            Edge { u: rep_new[a as usize], v: rep_new[b as usize], w, id: id as u32 }
        })
        .collect();
    ContractedGraph {
        graph: Graph::from_edges(reps.len(), edges, true),
        orig_eid,
        vertex_map,
    }
}

/// Subgraph induced by the vertices with `keep[v] == true`, with original
/// edge ids preserved in `orig_eid`.
pub fn induced_subgraph(g: &Graph, keep: &[bool]) -> ContractedGraph {
    assert_eq!(keep.len(), g.n());
    let mut vertex_map = vec![u32::MAX; g.n()];
    let mut next = 0u32;
    for v in 0..g.n() {
        if keep[v] {
            vertex_map[v] = next;
            next += 1;
        }
    }
    let mut orig_eid = Vec::new();
    let mut edges = Vec::new();
    for e in g.edges() {
        if keep[e.u as usize] && keep[e.v as usize] {
            let id = edges.len() as u32;
            edges.push(Edge {
                u: vertex_map[e.u as usize],
                v: vertex_map[e.v as usize],
                w: e.w,
                id,
            });
            orig_eid.push(e.id);
        }
    }
    ContractedGraph {
        graph: Graph::from_edges(next as usize, edges, g.is_weighted()),
        orig_eid,
        vertex_map,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_degree_weights() {
        let g = Graph::unweighted(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let w = degree_weights(&g);
        assert!(w.edges().iter().all(|e| e.w == 4));
    }

    #[test]
    fn star_and_path_degree_weights() {
        let star = Graph::unweighted(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(degree_weights(&star).edges().iter().all(|e| e.w == 4));
        let path = Graph::unweighted(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(degree_weights(&path).edges().iter().all(|e| e.w == 3));
    }

    #[test]
    fn contract_identity_keeps_graph() {
        let g = Graph::new(4, vec![(0, 1, 5), (1, 2, 3), (2, 3, 7)], true).unwrap();
        let c = contract_graph(&g, &ContractionMap::identity(4), false);
        assert_eq!(c.graph.n(), 4);
        assert_eq!(c.graph.m(), 3);
        assert_eq!(c.orig_eid, vec![0, 1, 2]);
    }

    #[test]
    fn contract_all_to_one() {
        let g = Graph::new(3, vec![(0, 1, 1), (1, 2, 2)], true).unwrap();
        let map = ContractionMap::from_vec(vec![0, 0, 0]);
        let dropped = contract_graph(&g, &map, true);
        assert_eq!(dropped.graph.n(), 0);
        assert_eq!(dropped.graph.m(), 0);
        let kept = contract_graph(&g, &map, false);
        assert_eq!(kept.graph.n(), 1);
        assert_eq!(kept.graph.m(), 0);
    }

    #[test]
    fn contract_four_cycle_pairwise() {
        // 4-cycle weights 1,2,3,4; opposite vertices merged pairwise leaves
        // two vertices joined by the minimum-weight parallel edge.
        let g = Graph::new(
            4,
            vec![(0, 1, 1), (1, 2, 2), (2, 3, 3), (3, 0, 4)],
            true,
        )
        .unwrap();
        let map = ContractionMap::from_vec(vec![0, 1, 0, 1]);
        let c = contract_graph(&g, &map, true);
        assert_eq!(c.graph.n(), 2);
        assert_eq!(c.graph.m(), 1);
        assert_eq!(c.graph.edge(0).w, 1);
        assert_eq!(c.orig_eid, vec![0]);
    }

    #[test]
    fn rejects_self_loops_and_duplicates() {
        assert!(Graph::unweighted(2, vec![(0, 0)]).is_err());
        assert!(Graph::unweighted(2, vec![(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn adjacency_sorted_by_weight_then_id() {
        let g = Graph::new(3, vec![(0, 1, 9), (0, 2, 2)], true).unwrap();
        let nb: Vec<u32> = g.neighbors(0).iter().map(|&(v, _)| v).collect();
        assert_eq!(nb, vec![2, 1]);
    }
}
