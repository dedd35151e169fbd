use crate::error::Result;
use crate::graph::Graph;
use crate::runtime::{RoundKind, Runtime, TableId};
use crate::tree::{pointer_chase_round, publish_pointers};

use super::{contract_rounds, decode_adj, wedges_from_graph, write_adjacency_round, WEdge};

/// Spanning forest of a graph that is already dense relative to the machine
/// space: repeated minimum-edge star contraction until the residual fits the
/// single-machine finish threshold, then Kruskal on one machine.
///
/// Stands in for the dense prior-work routine the constant-round pipeline
/// hands its contracted graph to; correct for any input, with rounds
/// reported rather than bounded.
pub fn dense_msf(rt: &mut Runtime, g: &Graph) -> Result<Vec<u32>> {
    let edges = wedges_from_graph(g);
    if edges.is_empty() {
        return Ok(Vec::new());
    }
    let adj = rt.table();
    write_adjacency_round(rt, adj, &edges)?;
    let out = dense_level(rt, &edges, adj);
    rt.clear_table(adj);
    out
}

/// The iteration core over working edges whose adjacency is resident in
/// `adj_table`. Edge ids in the result refer to the ids carried by `edges`.
pub(crate) fn dense_level(
    rt: &mut Runtime,
    edges: &[WEdge],
    adj_table: TableId,
) -> Result<Vec<u32>> {
    let mut chosen: Vec<u32> = Vec::new();
    let mut level: Vec<WEdge> = edges.to_vec();
    let mut adj = adj_table;
    let mut first_level = true;
    for _ in 0..64 {
        if level.len() <= rt.config().finish_threshold {
            break;
        }
        let mut vertices: Vec<u32> = level.iter().flat_map(|e| [e.u, e.v]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let n = vertices.last().map_or(0, |&v| v as usize + 1);
        // Each vertex picks its minimum incident edge; a pair that picked
        // the same edge roots at the smaller endpoint.
        let picks = rt.round_out(
            RoundKind::Map,
            &vertices,
            |&v| v as u64,
            |ctx, mine, store, sink| {
                for &v in mine {
                    let vals = ctx.lookup(store, &adj.key1(v))?;
                    if vals.is_empty() {
                        continue;
                    }
                    let mine_best = decode_adj(&vals[0]);
                    let u = mine_best.nbr;
                    let theirs = ctx.lookup(store, &adj.key1(u))?;
                    let their_best = decode_adj(&theirs[0]);
                    let parent = if their_best.key == mine_best.key && v < u { v } else { u };
                    sink.push(ctx, (v, parent, mine_best.key.2))?;
                }
                Ok(())
            },
        )?;
        let mut parent: Vec<u32> = (0..n as u32).collect();
        for &(v, p, eid) in &picks {
            parent[v as usize] = p;
            chosen.push(eid);
        }
        let map_table = rt.table();
        let items: Vec<(u32, u32)> =
            parent.iter().enumerate().map(|(v, &p)| (v as u32, p)).collect();
        publish_pointers(rt, map_table, &items)?;
        let (map, roots_table) = pointer_chase_round(rt, map_table, n)?;
        rt.clear_table(map_table);
        let (next, _, next_adj) = contract_rounds(rt, &level, &map, roots_table)?;
        rt.clear_table(roots_table);
        if !first_level {
            rt.clear_table(adj);
        }
        first_level = false;
        adj = next_adj;
        level = next;
    }
    // Single-machine finish on the residual.
    let mut order = level.clone();
    order.sort_unstable_by_key(|e| e.key());
    let n = level.iter().flat_map(|e| [e.u, e.v]).max().map_or(0, |v| v as usize + 1);
    let mut uf = crate::oracle::UnionFind::new(n);
    for e in order {
        if uf.union(e.u, e.v) {
            chosen.push(e.id);
        }
    }
    if !first_level {
        rt.clear_table(adj);
    }
    chosen.sort_unstable();
    chosen.dedup();
    Ok(chosen)
}
