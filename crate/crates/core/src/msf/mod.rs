//! Minimum spanning forest and connectivity in a constant number of rounds:
//! per-vertex truncated Prim searches over the store, contraction of the
//! discovered fragments, a dense finish on the shrunken graph, the
//! edge-sampling query reduction, light-edge filtering, and forest
//! connectivity through cycle sampling.

mod dense;
mod empirical;
mod flight;
mod forest_cc;
mod kkt;
mod prim;

pub use dense::dense_msf;
pub use empirical::{msf_empirical, EmpiricalStats};
pub use flight::{find_light_edges, FlightLabel};
pub use forest_cc::forest_connectivity;
pub use kkt::{kkt_msf, KktStats};
pub use prim::{prim_search, PrimSearchResult, StopReason};

use crate::error::Result;
use crate::graph::{ternarize, ContractionMap, Graph, VertexRank};
use crate::oracle::UnionFind;
use crate::runtime::{get_u32, get_u64, put_u32, put_u64, RoundKind, Runtime, TableId};
use crate::tree::{pointer_chase_round, publish_pointers};

/// Working edge inside the pipeline: endpoints at the current contraction
/// level, the strict sort key `(flag, w, id)` where dummies carry flag 0,
/// and the edge id at the level the pipeline started from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct WEdge {
    pub u: u32,
    pub v: u32,
    pub flag: u8,
    pub w: u64,
    pub id: u32,
}

impl WEdge {
    #[inline]
    pub fn key(&self) -> (u8, u64, u32) {
        (self.flag, self.w, self.id)
    }
}

pub(crate) fn wedges_from_graph(g: &Graph) -> Vec<WEdge> {
    g.edges()
        .iter()
        .map(|e| WEdge { u: e.u, v: e.v, flag: 1, w: g.msf_weight(e.id), id: e.id })
        .collect()
}

/// Result of a spanning-forest computation on the original graph.
#[derive(Debug, Clone)]
pub struct MsfResult {
    /// Chosen original edge ids, sorted ascending.
    pub edges: Vec<u32>,
    /// Sum of effective weights of the chosen edges.
    pub total_weight: u64,
    /// Connected components implied by the forest, labeled by minimum
    /// member vertex id.
    pub components: ContractionMap,
}

/// Diagnostics of one truncated-Prim application.
#[derive(Debug, Clone, Default)]
pub struct PrimStats {
    /// Vertex count of the searched (degree-bounded) graph.
    pub searched_n: usize,
    /// Exploration cutoff `ceil(n^(eps/2))`.
    pub threshold: usize,
    /// Store lookups consumed by the search round.
    pub search_queries: u64,
    /// Vertices of the contracted graph.
    pub survivors: usize,
    /// Edges of the contracted graph.
    pub contracted_edges: usize,
    /// Searches stopped by the exploration cutoff.
    pub explored_stops: usize,
}

#[derive(Debug, Clone, Default)]
pub struct MsfStats {
    pub prim: Option<PrimStats>,
    pub dense_rounds: u64,
    pub sparse_branch: bool,
}

/// Adjacency value layout: flag(1) | w(8) | eid(4) | neighbor(4); the byte
/// order of the store grouping equals the search order.
pub(crate) fn adj_value(flag: u8, w: u64, eid: u32, nbr: u32) -> Vec<u8> {
    let mut v = Vec::with_capacity(17);
    v.push(flag);
    put_u64(&mut v, w);
    put_u32(&mut v, eid);
    put_u32(&mut v, nbr);
    v
}

pub(crate) struct AdjEntry {
    pub key: (u8, u64, u32),
    pub nbr: u32,
}

pub(crate) fn decode_adj(bytes: &[u8]) -> AdjEntry {
    AdjEntry {
        key: (bytes[0], get_u64(bytes, 1), get_u32(bytes, 9)),
        nbr: get_u32(bytes, 13),
    }
}

/// One shuffle round that writes the weight-sorted adjacency of the given
/// edges under `table`.
pub(crate) fn write_adjacency_round(
    rt: &mut Runtime,
    table: TableId,
    edges: &[WEdge],
) -> Result<()> {
    rt.round(RoundKind::Shuffle, edges, |e| e.id as u64, |ctx, mine, _| {
        for e in mine {
            ctx.emit(table.key1(e.u), adj_value(e.flag, e.w, e.id, e.v))?;
            ctx.emit(table.key1(e.v), adj_value(e.flag, e.w, e.id, e.u))?;
        }
        Ok(())
    })
}

/// Contracts `edges` along the map resident in `map_table` using two shuffle
/// rounds: the first groups edges by canonical component pair (the stable
/// value sort makes the head of each group the minimum-key edge), the second
/// publishes the contracted adjacency. Returns the surviving edges with
/// dense vertex ids, the old-vertex relabeling, and the adjacency table.
pub(crate) fn contract_rounds(
    rt: &mut Runtime,
    edges: &[WEdge],
    map: &ContractionMap,
    map_table: TableId,
) -> Result<(Vec<WEdge>, Vec<u32>, TableId)> {
    let pair_table = rt.table();
    rt.round(RoundKind::Shuffle, edges, |e| e.id as u64, |ctx, mine, store| {
        for e in mine {
            let cu = get_u32(&ctx.lookup(store, &map_table.key1(e.u))?[0], 0);
            let cv = get_u32(&ctx.lookup(store, &map_table.key1(e.v))?[0], 0);
            if cu == cv {
                continue;
            }
            let mut val = Vec::with_capacity(13);
            val.push(e.flag);
            put_u64(&mut val, e.w);
            put_u32(&mut val, e.id);
            ctx.emit(pair_table.key2(cu.min(cv), cu.max(cv)), val)?;
        }
        Ok(())
    })?;
    // The grouped scan yields, per surviving pair, its minimum-key edge.
    let mut reps: Vec<u32> = Vec::new();
    let mut kept: Vec<(u32, u32, u8, u64, u32)> = Vec::new();
    for (payload, values) in rt.store().scan(pair_table) {
        let a = u32::from_be_bytes(payload[0..4].try_into().unwrap());
        let b = u32::from_be_bytes(payload[4..8].try_into().unwrap());
        let best = &values[0];
        kept.push((a, b, best[0], get_u64(best, 1), get_u32(best, 9)));
        reps.push(a);
        reps.push(b);
    }
    rt.clear_table(pair_table);
    reps.sort_unstable();
    reps.dedup();
    let dense = |r: u32| reps.binary_search(&r).expect("representative") as u32;
    let contracted: Vec<WEdge> = kept
        .iter()
        .map(|&(a, b, flag, w, id)| WEdge { u: dense(a), v: dense(b), flag, w, id })
        .collect();
    let vertex_map: Vec<u32> = map
        .as_slice()
        .iter()
        .map(|&r| match reps.binary_search(&r) {
            Ok(i) => i as u32,
            Err(_) => u32::MAX,
        })
        .collect();
    let adj_table = rt.table();
    write_adjacency_round(rt, adj_table, &contracted)?;
    Ok((contracted, vertex_map, adj_table))
}

/// Publishes per-vertex component labels as one shuffle round.
pub(crate) fn publish_components(
    rt: &mut Runtime,
    labels: &[u32],
) -> Result<(ContractionMap, TableId)> {
    let table = rt.table();
    let items: Vec<(u32, u32)> = labels.iter().enumerate().map(|(v, &l)| (v as u32, l)).collect();
    rt.round(RoundKind::Shuffle, &items, |&(v, _)| v as u64, |ctx, mine, _| {
        for &(v, l) in mine {
            ctx.emit(table.key1(v), crate::runtime::u32s(&[l]))?;
        }
        Ok(())
    })?;
    Ok((ContractionMap::from_vec(labels.to_vec()), table))
}

/// Component labels (minimum member id) implied by an edge id set.
pub(crate) fn components_of_edges(n: usize, g: &Graph, edge_ids: &[u32]) -> Vec<u32> {
    let mut uf = UnionFind::new(n);
    for &id in edge_ids {
        let e = g.edge(id);
        uf.union(e.u, e.v);
    }
    uf.labels()
}

/// Outcome of the truncated-Prim stage.
pub(crate) struct PrimOutcome {
    /// Forest edge ids discovered by the searches (deduplicated, ids at the
    /// searched level).
    pub msf_ids: Vec<u32>,
    /// Contracted graph edges with dense vertex ids.
    pub contracted: Vec<WEdge>,
    /// Contraction map on searched-level vertices (roots of the hit forest).
    pub map: ContractionMap,
    /// Adjacency table of the contracted graph.
    pub adj_table: TableId,
    pub stats: PrimStats,
}

#[derive(Clone, Copy)]
enum SearchOut {
    MsfEdge(u32),
    Hit(u32, u32),
    ExploredStop,
}

/// Runs per-vertex Prim searches over the store and contracts the graph by
/// the directed hit-forest: one adjacency shuffle, one search round, one
/// shuffle publishing the hit map, one chase round, and the two contraction
/// shuffles.
pub(crate) fn truncated_prim(
    rt: &mut Runtime,
    n: usize,
    edges: &[WEdge],
    ranks: &VertexRank,
    threshold: usize,
) -> Result<PrimOutcome> {
    let adj = rt.table();
    write_adjacency_round(rt, adj, edges)?;
    let before = rt.metrics().total_queries;

    let vertices: Vec<u32> = (0..n as u32).collect();
    let outs = rt.round_out(
        RoundKind::Map,
        &vertices,
        |&v| v as u64,
        |ctx, mine, store, sink| {
            for &v in mine {
                let res = prim_search(v, ranks, threshold, |x| {
                    let vals = ctx.lookup(store, &adj.key1(x))?;
                    Ok(vals.iter().map(|b| decode_adj(b)).collect())
                })?;
                for id in &res.discovered {
                    sink.push(ctx, SearchOut::MsfEdge(*id))?;
                }
                match res.stop {
                    StopReason::HitLowerRank(u) => sink.push(ctx, SearchOut::Hit(v, u))?,
                    StopReason::Explored => sink.push(ctx, SearchOut::ExploredStop)?,
                    StopReason::ComponentDone => {}
                }
            }
            Ok(())
        },
    )?;
    let search_queries = rt.metrics().total_queries - before;

    let mut msf_ids: Vec<u32> = Vec::new();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    let mut explored_stops = 0usize;
    for out in outs {
        match out {
            SearchOut::MsfEdge(id) => msf_ids.push(id),
            SearchOut::Hit(v, u) => parent[v as usize] = u,
            SearchOut::ExploredStop => explored_stops += 1,
        }
    }
    msf_ids.sort_unstable();
    msf_ids.dedup();

    let map_table = rt.table();
    let parent_items: Vec<(u32, u32)> =
        parent.iter().enumerate().map(|(v, &p)| (v as u32, p)).collect();
    publish_pointers(rt, map_table, &parent_items)?;
    let (map, roots_table) = pointer_chase_round(rt, map_table, n)?;
    rt.clear_table(map_table);
    let (contracted, _, adj_table) = contract_rounds(rt, edges, &map, roots_table)?;
    rt.clear_table(roots_table);
    rt.clear_table(adj);

    let survivors = {
        let mut vs: Vec<u32> = contracted.iter().flat_map(|e| [e.u, e.v]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs.len()
    };
    let stats = PrimStats {
        searched_n: n,
        threshold,
        search_queries,
        survivors,
        contracted_edges: contracted.len(),
        explored_stops,
    };
    Ok(PrimOutcome { msf_ids, contracted, map, adj_table, stats })
}

/// Minimum spanning forest in a constant number of rounds.
///
/// Sparse inputs (`m < n^(1 + eps/2)`) are degree-bounded first, searched by
/// truncated Prim, contracted, and finished by the dense routine; dense
/// inputs go to the dense routine directly. Components are derived from the
/// chosen edges and published. The round count of the sparse pipeline does
/// not depend on the input size as long as the contracted graph fits the
/// single-machine finish.
pub fn msf(rt: &mut Runtime, g: &Graph, eps: f64) -> Result<MsfResult> {
    let (result, _) = msf_with_stats(rt, g, eps)?;
    Ok(result)
}

pub fn msf_with_stats(rt: &mut Runtime, g: &Graph, eps: f64) -> Result<(MsfResult, MsfStats)> {
    let n = g.n();
    let m = g.m();
    if m == 0 {
        return Ok((
            MsfResult {
                edges: Vec::new(),
                total_weight: 0,
                components: ContractionMap::identity(n),
            },
            MsfStats::default(),
        ));
    }
    let mut stats = MsfStats::default();
    let sparse = (m as f64) < (n as f64).powf(1.0 + eps / 2.0);
    stats.sparse_branch = sparse;
    let mut chosen: Vec<u32>;
    if sparse {
        let t = ternarize(g);
        let tn = t.base.n();
        let edges: Vec<WEdge> = t
            .base
            .edges()
            .iter()
            .map(|e| WEdge {
                u: e.u,
                v: e.v,
                flag: u8::from(!t.is_dummy[e.id as usize]),
                w: e.w,
                id: e.id,
            })
            .collect();
        let ranks = VertexRank::new(rt.config().seed);
        let threshold = ((tn as f64).powf(eps / 2.0).ceil() as usize).max(1);
        let outcome = truncated_prim(rt, tn, &edges, &ranks, threshold)?;
        let dense_before = rt.metrics().rounds;
        let rest = dense_msf(rt, &outcome.contracted, outcome.adj_table)?;
        stats.dense_rounds = rt.metrics().rounds - dense_before;
        rt.clear_table(outcome.adj_table);
        stats.prim = Some(outcome.stats);
        // Back to original ids; dummy edges drop out here.
        chosen = outcome
            .msf_ids
            .iter()
            .chain(rest.iter())
            .filter_map(|&tid| t.real_eid[tid as usize])
            .collect();
    } else {
        let edges = wedges_from_graph(g);
        let adj = rt.table();
        write_adjacency_round(rt, adj, &edges)?;
        let dense_before = rt.metrics().rounds;
        chosen = dense_msf(rt, &edges, adj)?;
        stats.dense_rounds = rt.metrics().rounds - dense_before;
        rt.clear_table(adj);
    }
    chosen.sort_unstable();
    chosen.dedup();
    let labels = components_of_edges(n, g, &chosen);
    let (components, comp_table) = publish_components(rt, &labels)?;
    rt.clear_table(comp_table);
    let total_weight = chosen.iter().map(|&id| g.msf_weight(id)).sum();
    Ok((MsfResult { edges: chosen, total_weight, components }, stats))
}

/// Connected components: spanning forest first, then forest connectivity on
/// the chosen edges.
pub fn connectivity(rt: &mut Runtime, g: &Graph, eps: f64) -> Result<ContractionMap> {
    let forest = msf(rt, g, eps)?;
    let triples: Vec<(u32, u32, u64)> = forest
        .edges
        .iter()
        .map(|&id| {
            let e = g.edge(id);
            (e.u, e.v, g.msf_weight(id))
        })
        .collect();
    let f = Graph::new(g.n(), triples, true).expect("forest edges form a valid graph");
    forest_connectivity(rt, &f, eps)
}
