//! Classification of graph edges against a forest: an edge is light when
//! its weight does not exceed the maximum weight on the forest path between
//! its endpoints (infinite across components). The forest structures (tour
//! RMQ for LCA, heavy paths, pivot lists) are shipped into the store by one
//! shuffle and each edge is classified with a constant number of lookups.

use crate::error::Result;
use crate::graph::Graph;
use crate::runtime::{get_u32, get_u64, put_u32, put_u64, RoundKind, Runtime, TableId};
use crate::tree::{build_hld, build_pivots, euler_tour, root_forest, EdgeKey};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlightLabel {
    /// Endpoints in different forest components; light by convention.
    CrossComponent,
    Light,
    Heavy,
}

#[derive(Clone, Copy)]
struct VRec {
    comp: u32,
    level: u32,
    first: u32,
    path_id: u32,
    path_pos: u32,
}

fn enc_vrec(r: &VRec) -> Vec<u8> {
    let mut v = Vec::with_capacity(20);
    for x in [r.comp, r.level, r.first, r.path_id, r.path_pos] {
        put_u32(&mut v, x);
    }
    v
}

fn dec_vrec(b: &[u8]) -> VRec {
    VRec {
        comp: get_u32(b, 0),
        level: get_u32(b, 4),
        first: get_u32(b, 8),
        path_id: get_u32(b, 12),
        path_pos: get_u32(b, 16),
    }
}

fn enc_key(k: Option<EdgeKey>) -> Vec<u8> {
    let mut v = Vec::with_capacity(13);
    match k {
        Some((w, id)) => {
            v.push(1);
            put_u64(&mut v, w);
            put_u32(&mut v, id);
        }
        None => {
            v.push(0);
            put_u64(&mut v, 0);
            put_u32(&mut v, 0);
        }
    }
    v
}

fn dec_key(b: &[u8], off: usize) -> Option<EdgeKey> {
    if b[off] == 0 {
        None
    } else {
        Some((get_u64(b, off + 1), get_u32(b, off + 9)))
    }
}

fn max_key(a: Option<EdgeKey>, b: Option<EdgeKey>) -> Option<EdgeKey> {
    match (a, b) {
        (None, x) => x,
        (x, None) => x,
        (Some(x), Some(y)) => Some(x.max(y)),
    }
}

/// Labels every edge of `g` against the forest formed by `forest_ids`
/// (original edge ids of `g`). The forest's own edges always come out
/// light. Comparisons use the strict `(weight, original id)` order.
pub fn find_light_edges(
    rt: &mut Runtime,
    g: &Graph,
    forest_ids: &[u32],
) -> Result<Vec<FlightLabel>> {
    let n = g.n();
    let mut fids = forest_ids.to_vec();
    fids.sort_unstable();
    fids.dedup();
    // Dense forest ids ascending in original id order keeps the strict
    // order aligned between the two id spaces.
    let triples: Vec<(u32, u32, u64)> = fids
        .iter()
        .map(|&id| {
            let e = g.edge(id);
            (e.u, e.v, g.msf_weight(id))
        })
        .collect();
    let f = Graph::new(n, triples, true).expect("forest edge subset is simple");
    let rf = root_forest(&f)?;
    let lca = euler_tour(&rf, &f);
    let hld = build_hld(&rf, &f);
    let pivots = build_pivots(&rf, &hld);
    let orig_of = |dense: u32| fids[dense as usize];

    // Serialize all structures, converting edge keys to original ids.
    let t_vertex = rt.table();
    let t_tour = rt.table();
    let t_path = rt.table();
    let t_pivot = rt.table();
    let mut pairs: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
    for v in 0..n as u32 {
        let rec = VRec {
            comp: rf.component[v as usize],
            level: rf.level[v as usize],
            first: lca.first[v as usize],
            path_id: hld.path_id[v as usize],
            path_pos: hld.path_pos[v as usize],
        };
        pairs.push((t_vertex.key1(v), enc_vrec(&rec)));
        for &(p, m) in &pivots.lists[v as usize] {
            let mut val = Vec::with_capacity(21);
            put_u32(&mut val, rf.level[p as usize]);
            put_u32(&mut val, p);
            val.extend_from_slice(&enc_key(m.map(|(w, id)| (w, orig_of(id)))));
            pairs.push((t_pivot.key1(v), val));
        }
    }
    // Tour RMQ cells: (row, index) -> (min level, vertex) over the window.
    {
        let k = lca.tour.len();
        let levels = if k <= 1 { 1 } else { k.ilog2() as usize + 1 };
        // Rebuild windows directly from the tour levels.
        let mut row: Vec<(u32, u32)> = lca
            .tour_level
            .iter()
            .zip(lca.tour.iter())
            .map(|(&l, &v)| (l, v))
            .collect();
        for (x, &cell) in row.iter().enumerate() {
            pairs.push((t_tour.key2(0, x as u32), tour_cell(cell)));
        }
        let mut prev = row.clone();
        for y in 1..levels {
            let half = 1usize << (y - 1);
            row = (0..k)
                .map(|x| {
                    if x + half < k {
                        prev[x].min(prev[x + half])
                    } else {
                        prev[x]
                    }
                })
                .collect();
            for (x, &cell) in row.iter().enumerate() {
                pairs.push((t_tour.key2(y as u32, x as u32), tour_cell(cell)));
            }
            prev = row.clone();
        }
    }
    // Heavy-path RMQ cells: (path, row, index) -> max key over the window.
    for (pid, path) in hld.paths.iter().enumerate() {
        if path.len() < 2 {
            continue;
        }
        let keys: Vec<EdgeKey> = path
            .windows(2)
            .map(|w| {
                let (wt, id) = hld.parent_edge[w[1] as usize].expect("heavy edge");
                (wt, orig_of(id))
            })
            .collect();
        let k = keys.len();
        let levels = if k <= 1 { 1 } else { k.ilog2() as usize + 1 };
        let mut prev = keys.clone();
        for (x, &cell) in prev.iter().enumerate() {
            pairs.push((t_path.key3(pid as u32, 0, x as u32), enc_key(Some(cell))));
        }
        for y in 1..levels {
            let half = 1usize << (y - 1);
            let row: Vec<EdgeKey> = (0..k)
                .map(|x| if x + half < k { prev[x].max(prev[x + half]) } else { prev[x] })
                .collect();
            for (x, &cell) in row.iter().enumerate() {
                pairs.push((t_path.key3(pid as u32, y as u32, x as u32), enc_key(Some(cell))));
            }
            prev = row;
        }
    }
    let idx: Vec<u32> = (0..pairs.len() as u32).collect();
    rt.round(RoundKind::Shuffle, &idx, |&i| i as u64, |ctx, mine, _| {
        for &i in mine {
            let (k, v) = &pairs[i as usize];
            ctx.emit(k.clone(), v.clone())?;
        }
        Ok(())
    })?;

    // Classification round: constant lookups per edge.
    let edge_ids: Vec<u32> = (0..g.m() as u32).collect();
    let labels_out = rt.round_out(
        RoundKind::Map,
        &edge_ids,
        |&e| e as u64,
        |ctx, mine, store, sink| {
            for &eid in mine {
                let e = g.edge(eid);
                let ru = dec_vrec(&ctx.lookup(store, &t_vertex.key1(e.u))?[0]);
                let rw = dec_vrec(&ctx.lookup(store, &t_vertex.key1(e.v))?[0]);
                if ru.comp != rw.comp {
                    sink.push(ctx, (eid, FlightLabel::CrossComponent))?;
                    continue;
                }
                // LCA by level-RMQ over the tour segment.
                let (i, j) = {
                    let (a, b) = (ru.first as usize, rw.first as usize);
                    (a.min(b), a.max(b))
                };
                let t = (j - i + 1).ilog2();
                let c1 = ctx.lookup(store, &t_tour.key2(t, i as u32))?;
                let c2 = ctx.lookup(store, &t_tour.key2(t, (j + 1 - (1usize << t)) as u32))?;
                let (l1, v1) = (get_u32(&c1[0], 0), get_u32(&c1[0], 4));
                let (l2, v2) = (get_u32(&c2[0], 0), get_u32(&c2[0], 4));
                let (lca_level, lca_v) = if (l1, v1) <= (l2, v2) { (l1, v1) } else { (l2, v2) };
                let threshold = {
                    let half_u =
                        half_max(ctx, store, e.u, &ru, lca_v, lca_level, t_vertex, t_pivot, t_path)?;
                    let half_w =
                        half_max(ctx, store, e.v, &rw, lca_v, lca_level, t_vertex, t_pivot, t_path)?;
                    max_key(half_u, half_w)
                };
                let own: EdgeKey = (g.msf_weight(eid), eid);
                let label = match threshold {
                    Some(wf) if own <= wf => FlightLabel::Light,
                    Some(_) => FlightLabel::Heavy,
                    // Both endpoints equal the LCA cannot happen for a
                    // simple edge; a neutral threshold means u == w.
                    None => FlightLabel::Heavy,
                };
                sink.push(ctx, (eid, label))?;
            }
            Ok(())
        },
    )?;
    for t in [t_vertex, t_tour, t_path, t_pivot] {
        rt.clear_table(t);
    }
    let mut labels = vec![FlightLabel::Heavy; g.m()];
    for (eid, label) in labels_out {
        labels[eid as usize] = label;
    }
    Ok(labels)
}

fn tour_cell(cell: (u32, u32)) -> Vec<u8> {
    let mut v = Vec::with_capacity(8);
    put_u32(&mut v, cell.0);
    put_u32(&mut v, cell.1);
    v
}

/// Maximum edge key on the path from `x` up to the LCA, split at the lowest
/// pivot of `x` at or below the LCA's level.
#[allow(clippy::too_many_arguments)]
fn half_max(
    ctx: &mut crate::runtime::MachineContext,
    store: &crate::runtime::DhtStore,
    x: u32,
    xrec: &VRec,
    lca_v: u32,
    lca_level: u32,
    t_vertex: TableId,
    t_pivot: TableId,
    t_path: TableId,
) -> Result<Option<EdgeKey>> {
    if x == lca_v {
        return Ok(None);
    }
    let entries = ctx.lookup(store, &t_pivot.key1(x))?;
    // Lowest-level pivot still at or below the path's top.
    let mut best: Option<(u32, u32, Option<EdgeKey>)> = None;
    for b in &entries {
        let level = get_u32(b, 0);
        let pivot = get_u32(b, 4);
        if level >= lca_level {
            match best {
                Some((bl, _, _)) if bl <= level => {}
                _ => best = Some((level, pivot, dec_key(b, 8))),
            }
        }
    }
    let (_, p, prefix) = best.expect("x itself is a valid pivot");
    if p == lca_v {
        return Ok(prefix);
    }
    // The rest lies inside one heavy path.
    let prec = if p == x {
        *xrec
    } else {
        dec_vrec(&ctx.lookup(store, &t_vertex.key1(p))?[0])
    };
    let lrec = dec_vrec(&ctx.lookup(store, &t_vertex.key1(lca_v))?[0]);
    debug_assert_eq!(prec.path_id, lrec.path_id);
    let (top, bottom) = (lrec.path_pos as usize, prec.path_pos as usize);
    debug_assert!(top < bottom);
    let span = bottom - top;
    let t = span.ilog2();
    let c1 = ctx.lookup(store, &t_path.key3(prec.path_id, t, top as u32))?;
    let c2 = ctx.lookup(store, &t_path.key3(prec.path_id, t, (bottom - (1usize << t)) as u32))?;
    let seg = max_key(dec_key(&c1[0], 0), dec_key(&c2[0], 0));
    Ok(max_key(prefix, seg))
}
