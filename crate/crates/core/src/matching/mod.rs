//! Maximal independent set and maximal matching via truncated query
//! processes over the store, reproducing the outcome of the sequential
//! greedy over random priorities exactly.

mod mis;
mod mm;

pub use mis::{ampc_mis, mis_query, MisOutcome, MisRunStats};
pub use mm::{
    ampc_mm_constant, ampc_mm_loglog, edge_query, vertex_query, EdgeOutcome, LoglogStageStats,
    MmRunStats, VertexOutcome,
};

/// A matching as chosen original edge ids plus the per-vertex mate view.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingResult {
    /// Matched edge ids, sorted ascending.
    pub edges: Vec<u32>,
    pub mate: Vec<Option<u32>>,
}

impl MatchingResult {
    pub(crate) fn from_pairs(n: usize, mut edge_ids: Vec<u32>, g: &crate::graph::Graph) -> Self {
        edge_ids.sort_unstable();
        edge_ids.dedup();
        let mut mate = vec![None; n];
        for &id in &edge_ids {
            let e = g.edge(id);
            mate[e.u as usize] = Some(e.v);
            mate[e.v as usize] = Some(e.u);
        }
        MatchingResult { edges: edge_ids, mate }
    }
}
