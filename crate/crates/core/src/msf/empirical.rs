//! Streamlined spanning-forest pipeline that searches the raw graph without
//! degree bounding: weight-sorted adjacency construction, per-vertex
//! truncated Prim searches emitting visit tuples, a grouping pass that keeps
//! the earliest-rank visitor per visited vertex, pointer jumping over the
//! resulting trees, graph contraction, and an in-memory finish. Five
//! shuffles per pass with the default staging.

use crate::error::Result;
use crate::graph::{Graph, VertexRank};
use crate::runtime::{put_u32, put_u64, rank_pair, RoundKind, Runtime};
use crate::tree::pointer_chase_round;

use super::{
    components_of_edges, contract_rounds, decode_adj, prim_search, wedges_from_graph,
    write_adjacency_round, MsfResult, StopReason, WEdge,
};

#[derive(Debug, Clone, Default)]
pub struct EmpiricalStats {
    /// Shuffle rounds consumed.
    pub shuffles: u64,
    /// Total rounds consumed.
    pub rounds: u64,
    /// Search-and-contract passes until the residual fit on one machine.
    pub passes: u32,
    /// Vertices remaining after the final contraction.
    pub survivors: usize,
}

#[derive(Clone, Copy)]
enum SearchOut {
    ForestEdge(u32),
    Visit { visited: u32, visitor: u32 },
}

/// Spanning forest of a weighted graph via the single-search pipeline.
pub fn msf_empirical(rt: &mut Runtime, g: &Graph, eps: f64) -> Result<(MsfResult, EmpiricalStats)> {
    let rounds_before = rt.metrics().rounds;
    let shuffles_before = rt.metrics().shuffles;
    let n = g.n();
    let mut stats = EmpiricalStats::default();
    let mut chosen: Vec<u32> = Vec::new();
    let mut level: Vec<WEdge> = wedges_from_graph(g);
    let mut level_n = n;
    let ranks = VertexRank::new(rt.config().seed);

    while !level.is_empty() && level.len() > rt.config().finish_threshold {
        if stats.passes >= 4 {
            return Err(crate::error::Error::IterationBudgetExceeded(4));
        }
        stats.passes += 1;
        // (1) Weight-sorted adjacency into the store.
        let adj = rt.table();
        write_adjacency_round(rt, adj, &level)?;

        // (2) Truncated Prim search from every vertex; forest edges and
        // visit tuples flow out of the round.
        let threshold = ((level_n as f64).powf(eps / 2.0).ceil() as usize).max(1);
        let vertices: Vec<u32> = (0..level_n as u32).collect();
        let outs = rt.round_out(
            RoundKind::Map,
            &vertices,
            |&v| v as u64,
            |ctx, mine, store, sink| {
                for &v in mine {
                    let res = prim_search(v, &ranks, threshold, |x| {
                        let vals = ctx.lookup(store, &adj.key1(x))?;
                        Ok(vals.iter().map(|b| decode_adj(b)).collect())
                    })?;
                    for id in &res.discovered {
                        sink.push(ctx, SearchOut::ForestEdge(*id))?;
                    }
                    for &x in res.visited.iter().skip(1) {
                        sink.push(ctx, SearchOut::Visit { visited: x, visitor: v })?;
                    }
                    let _ = &res.stop;
                    debug_assert!(
                        !matches!(res.stop, StopReason::HitLowerRank(u) if !ranks.before(u, v))
                    );
                }
                Ok(())
            },
        )?;
        let mut visit_pairs: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
        for out in &outs {
            match *out {
                SearchOut::ForestEdge(id) => chosen.push(id),
                SearchOut::Visit { visited, visitor } => {
                    let mut key = Vec::with_capacity(4);
                    put_u32(&mut key, visited);
                    visit_pairs.push((key, rank_pair(ranks.rank(visitor), visitor, 0)));
                }
            }
        }

        // (3) Group visits by visited vertex; the value sort puts the
        // earliest-rank visitor first.
        let grouped = rt.shuffle_pairs(visit_pairs)?;
        let mut parent: Vec<u32> = (0..level_n as u32).collect();
        for (key, values) in &grouped {
            let visited = u32::from_be_bytes(key[..4].try_into().unwrap());
            let visitor = u32::from_be_bytes(values[0][8..12].try_into().unwrap());
            parent[visited as usize] = visitor;
        }

        // (4) Publish the visitor map and collapse it by pointer jumping.
        let map_table = rt.table();
        let items: Vec<(u32, u32)> =
            parent.iter().enumerate().map(|(v, &p)| (v as u32, p)).collect();
        crate::tree::publish_pointers(rt, map_table, &items)?;
        let (map, roots_table) = pointer_chase_round(rt, map_table, level_n)?;
        rt.clear_table(map_table);

        // (5) Contract.
        let (next, _, next_adj) = contract_rounds(rt, &level, &map, roots_table)?;
        rt.clear_table(roots_table);
        rt.clear_table(adj);
        rt.clear_table(next_adj);
        stats.survivors = {
            let mut vs: Vec<u32> = next.iter().flat_map(|e| [e.u, e.v]).collect();
            vs.sort_unstable();
            vs.dedup();
            vs.len()
        };
        level_n = stats.survivors;
        // Contraction relabels vertices densely from zero.
        level = relabel_dense(next);
    }

    // In-memory finish on the residual graph.
    let mut order = level.clone();
    order.sort_unstable_by_key(|e| e.key());
    let finish_n = level.iter().flat_map(|e| [e.u, e.v]).max().map_or(0, |v| v as usize + 1);
    let mut uf = crate::oracle::UnionFind::new(finish_n);
    for e in order {
        if uf.union(e.u, e.v) {
            chosen.push(e.id);
        }
    }
    chosen.sort_unstable();
    chosen.dedup();
    let labels = components_of_edges(n, g, &chosen);
    let total_weight = chosen.iter().map(|&id| g.msf_weight(id)).sum();
    stats.rounds = rt.metrics().rounds - rounds_before;
    stats.shuffles = rt.metrics().shuffles - shuffles_before;
    Ok((
        MsfResult {
            edges: chosen,
            total_weight,
            components: crate::graph::ContractionMap::from_vec(labels),
        },
        stats,
    ))
}

fn relabel_dense(edges: Vec<WEdge>) -> Vec<WEdge> {
    let mut vs: Vec<u32> = edges.iter().flat_map(|e| [e.u, e.v]).collect();
    vs.sort_unstable();
    vs.dedup();
    let dense = |x: u32| vs.binary_search(&x).unwrap() as u32;
    edges
        .into_iter()
        .map(|e| WEdge { u: dense(e.u), v: dense(e.v), ..e })
        .collect()
}
