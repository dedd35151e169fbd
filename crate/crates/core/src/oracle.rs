//! Sequential reference implementations.
//!
//! These are the independent oracles the simulated algorithms are verified
//! against: Kruskal for spanning forests, union-find for components, and the
//! two greedy processes over random priority orders for MIS and matching.
//! They share no code with the round-based implementations.

use crate::graph::{EdgeRank, Graph, VertexRank};

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    /// Returns true if the edge merged two components.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra as usize] >= self.size[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        self.components -= 1;
        true
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    /// Component labels, each the minimum vertex id of its component.
    pub fn labels(&mut self) -> Vec<u32> {
        let n = self.parent.len();
        let mut min_of = vec![u32::MAX; n];
        for v in 0..n as u32 {
            let r = self.find(v) as usize;
            min_of[r] = min_of[r].min(v);
        }
        (0..n as u32).map(|v| min_of[self.find(v) as usize]).collect()
    }
}

/// Minimum spanning forest under the strict `(weight, edge id)` order.
/// Returns the chosen edge ids sorted ascending.
pub fn kruskal(g: &Graph) -> Vec<u32> {
    let mut order: Vec<u32> = (0..g.m() as u32).collect();
    order.sort_unstable_by_key(|&id| (g.msf_weight(id), id));
    let mut uf = UnionFind::new(g.n());
    let mut chosen = Vec::new();
    for id in order {
        let e = g.edge(id);
        if uf.union(e.u, e.v) {
            chosen.push(id);
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Total weight of an edge id set under the graph's MSF weights.
pub fn total_weight(g: &Graph, ids: &[u32]) -> u64 {
    ids.iter().map(|&id| g.msf_weight(id)).sum()
}

/// Connected components by union-find; labels are component minima.
pub fn union_find_cc(g: &Graph) -> Vec<u32> {
    let mut uf = UnionFind::new(g.n());
    for e in g.edges() {
        uf.union(e.u, e.v);
    }
    uf.labels()
}

pub fn component_count(g: &Graph) -> usize {
    let mut uf = UnionFind::new(g.n());
    for e in g.edges() {
        uf.union(e.u, e.v);
    }
    uf.component_count()
}

/// Lexicographically-first MIS over the vertex permutation induced by the
/// ranks: scan vertices in rank order, keep a vertex iff none of its kept
/// neighbors precedes it.
pub fn seq_greedy_mis(g: &Graph, ranks: &VertexRank) -> Vec<u32> {
    let mut order: Vec<u32> = (0..g.n() as u32).collect();
    order.sort_unstable_by_key(|&v| ranks.key(v));
    let mut in_mis = vec![false; g.n()];
    let mut blocked = vec![false; g.n()];
    for v in order {
        if blocked[v as usize] {
            continue;
        }
        in_mis[v as usize] = true;
        for &(u, _) in g.neighbors(v) {
            blocked[u as usize] = true;
        }
    }
    (0..g.n() as u32).filter(|&v| in_mis[v as usize]).collect()
}

/// Random greedy maximal matching: scan edges in rank order, keep an edge
/// iff both endpoints are still free. Returns chosen edge ids sorted.
pub fn seq_greedy_mm(g: &Graph, ranks: &EdgeRank) -> Vec<u32> {
    let mut order: Vec<u32> = (0..g.m() as u32).collect();
    order.sort_unstable_by_key(|&e| ranks.key(e));
    let mut matched = vec![false; g.n()];
    let mut chosen = Vec::new();
    for id in order {
        let e = g.edge(id);
        if !matched[e.u as usize] && !matched[e.v as usize] {
            matched[e.u as usize] = true;
            matched[e.v as usize] = true;
            chosen.push(id);
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Checks the defining properties of an independent set directly.
pub fn is_maximal_independent_set(g: &Graph, set: &[u32]) -> bool {
    let mut in_set = vec![false; g.n()];
    for &v in set {
        in_set[v as usize] = true;
    }
    // Independence.
    for e in g.edges() {
        if in_set[e.u as usize] && in_set[e.v as usize] {
            return false;
        }
    }
    // Maximality: every vertex outside has a neighbor inside.
    for v in 0..g.n() as u32 {
        if !in_set[v as usize]
            && !g.neighbors(v).iter().any(|&(u, _)| in_set[u as usize])
        {
            return false;
        }
    }
    true
}

/// Checks the defining properties of a maximal matching directly.
pub fn is_maximal_matching(g: &Graph, edge_ids: &[u32]) -> bool {
    let mut matched = vec![false; g.n()];
    for &id in edge_ids {
        let e = g.edge(id);
        if matched[e.u as usize] || matched[e.v as usize] {
            return false;
        }
        matched[e.u as usize] = true;
        matched[e.v as usize] = true;
    }
    g.edges()
        .iter()
        .all(|e| matched[e.u as usize] || matched[e.v as usize])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn kruskal_four_cycle() {
        let g = Graph::new(4, vec![(0, 1, 1), (1, 2, 2), (2, 3, 3), (3, 0, 4)], true).unwrap();
        let msf = kruskal(&g);
        assert_eq!(msf, vec![0, 1, 2]);
        assert_eq!(total_weight(&g, &msf), 6);
    }

    #[test]
    fn union_find_cc_on_two_cycles() {
        let g = generate::two_cycles(7).unwrap();
        assert_eq!(component_count(&g), 2);
        let labels = union_find_cc(&g);
        assert_eq!(labels[0], 0);
        assert_eq!(labels[7], 7);
    }

    #[test]
    fn greedy_mm_on_disjoint_edges() {
        let g = Graph::unweighted(6, vec![(0, 1), (2, 3), (4, 5)]).unwrap();
        let mm = seq_greedy_mm(&g, &EdgeRank::new(3));
        assert_eq!(mm, vec![0, 1, 2]);
        assert!(is_maximal_matching(&g, &mm));
    }

    #[test]
    fn greedy_mis_properties_hold() {
        for seed in 0..5 {
            let g = generate::random_graph(60, 150, seed).unwrap();
            let mis = seq_greedy_mis(&g, &VertexRank::new(seed));
            assert!(is_maximal_independent_set(&g, &mis));
        }
    }
}
