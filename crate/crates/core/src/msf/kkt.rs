//! Query reduction by edge sampling: compute the spanning forest of a
//! sampled subgraph, discard the edges that are heavy against it, and
//! finish on the surviving edges. The expected number of survivors is
//! `O(n / p)` for sampling probability `p`.

use crate::error::Result;
use crate::graph::Graph;
use crate::hashing::{self, tag};
use crate::runtime::Runtime;

use super::{find_light_edges, msf, FlightLabel, MsfResult};

const KKT_SALT: u64 = 0x6b6b_7400;

#[derive(Debug, Clone, Default)]
pub struct KktStats {
    /// Sampling probability used.
    pub p: f64,
    /// Edges of the sampled subgraph.
    pub sampled_edges: usize,
    /// Edges of the sample's spanning forest.
    pub forest_edges: usize,
    /// Edges classified light or cross-component (the surviving set).
    pub light_or_cross: usize,
}

/// Spanning forest via sampling with `p = 1 / max(2, ceil(log2 n))`.
pub fn kkt_msf(rt: &mut Runtime, g: &Graph, eps: f64) -> Result<(MsfResult, KktStats)> {
    let n = g.n().max(2);
    let log_n = (usize::BITS - (n - 1).leading_zeros()) as f64;
    let p = 1.0 / log_n.max(2.0);
    kkt_msf_with_prob(rt, g, eps, p)
}

/// Same pipeline with an explicit sampling probability (`p = 1` degenerates
/// to computing the forest of the full graph and returning it).
pub fn kkt_msf_with_prob(
    rt: &mut Runtime,
    g: &Graph,
    eps: f64,
    p: f64,
) -> Result<(MsfResult, KktStats)> {
    let seed = rt.config().seed;
    let sampled: Vec<u32> = (0..g.m() as u32)
        .filter(|&eid| {
            p >= 1.0
                || hashing::hash3(seed, tag::SAMPLE, KKT_SALT, eid as u64)
                    <= (p * u64::MAX as f64) as u64
        })
        .collect();
    let h = subgraph(g, &sampled);
    let sample_forest = msf(rt, &h, eps)?;
    let forest_ids: Vec<u32> = sample_forest
        .edges
        .iter()
        .map(|&dense| sampled[dense as usize])
        .collect();

    let labels = find_light_edges(rt, g, &forest_ids)?;
    let mut survivors: Vec<u32> = (0..g.m() as u32)
        .filter(|&eid| labels[eid as usize] != FlightLabel::Heavy)
        .collect();
    let light_or_cross = survivors.len();
    // The forest edges are light by definition, but keep the union explicit.
    survivors.extend_from_slice(&forest_ids);
    survivors.sort_unstable();
    survivors.dedup();

    let u = subgraph(g, &survivors);
    let final_forest = msf(rt, &u, eps)?;
    let edges: Vec<u32> = final_forest
        .edges
        .iter()
        .map(|&dense| survivors[dense as usize])
        .collect();
    let total_weight = edges.iter().map(|&id| g.msf_weight(id)).sum();
    let stats = KktStats {
        p,
        sampled_edges: sampled.len(),
        forest_edges: forest_ids.len(),
        light_or_cross,
    };
    Ok((
        MsfResult { edges, total_weight, components: final_forest.components },
        stats,
    ))
}

/// Subgraph on the same vertex set keeping the given original edges; dense
/// ids ascend with original ids, preserving the strict edge order.
fn subgraph(g: &Graph, edge_ids: &[u32]) -> Graph {
    debug_assert!(edge_ids.windows(2).all(|w| w[0] < w[1]));
    let triples: Vec<(u32, u32, u64)> = edge_ids
        .iter()
        .map(|&id| {
            let e = g.edge(id);
            (e.u, e.v, g.msf_weight(id))
        })
        .collect();
    Graph::new(g.n(), triples, true).expect("edge subset of a simple graph is simple")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;
    use crate::oracle;
    use crate::runtime::RuntimeConfig;

    fn rt_for(g: &Graph, seed: u64) -> Runtime {
        Runtime::new(RuntimeConfig::for_graph(g.n(), g.m(), 0.5, seed))
    }

    #[test]
    fn degenerate_probability_returns_the_forest_itself() {
        let base = generate::random_graph(50, 200, 3).unwrap();
        let g = generate::with_random_weights(&base, 25, 4);
        let mut rt = rt_for(&g, 1);
        let (r, stats) = kkt_msf_with_prob(&mut rt, &g, 0.5, 1.0).unwrap();
        assert_eq!(stats.sampled_edges, g.m());
        assert_eq!(r.edges, oracle::kruskal(&g));
    }

    #[test]
    fn matches_kruskal_on_random_graphs() {
        for seed in 0..5u64 {
            let base = generate::random_graph(100, 420, seed).unwrap();
            let g = generate::with_random_weights(&base, 60, seed + 9);
            let mut rt = rt_for(&g, seed);
            let (r, stats) = kkt_msf(&mut rt, &g, 0.5).unwrap();
            assert_eq!(r.edges, oracle::kruskal(&g), "seed {seed}");
            assert!(stats.light_or_cross >= r.edges.len());
            assert_eq!(
                r.components.component_count(),
                oracle::component_count(&g)
            );
        }
    }
}
