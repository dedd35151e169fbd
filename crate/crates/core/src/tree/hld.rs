use crate::error::{Error, Result};
use crate::graph::Graph;

use super::euler::EulerLca;
use super::rmq::{RmqMode, SparseTableRmq};
use super::RootedForest;

/// Comparable edge key `(effective weight, edge id)`; the strict total order
/// all path maxima are taken under. `None` is the neutral element (below
/// every edge), returned for empty paths.
pub type EdgeKey = (u64, u32);

/// Heavy-light decomposition of a rooted forest with per-path range-maximum
/// structures over the parent-edge keys.
#[derive(Debug, Clone)]
pub struct HeavyLight {
    pub heavy_child: Vec<Option<u32>>,
    /// Heavy path containing each vertex; paths are maximal heavy chains.
    pub path_id: Vec<u32>,
    /// Position within the path, 0 at the top (closest to the root).
    pub path_pos: Vec<u32>,
    /// Top-down vertex lists per path.
    pub paths: Vec<Vec<u32>>,
    /// Key of the edge to the parent (None at roots).
    pub parent_edge: Vec<Option<EdgeKey>>,
    /// Per-path RMQ over the keys of edges between consecutive path
    /// vertices; None for single-vertex paths.
    path_rmq: Vec<Option<SparseTableRmq<EdgeKey>>>,
}

/// Builds the decomposition: each non-leaf keeps a heavy edge to the child
/// with the largest subtree (ties to the smaller id); heavy edges form
/// vertex-disjoint paths and any root path crosses at most `log2 n` light
/// edges.
pub fn build_hld(rf: &RootedForest, forest: &Graph) -> HeavyLight {
    let n = rf.parent.len();
    let mut children: Vec<Vec<u32>> = vec![Vec::new(); n];
    for v in 0..n as u32 {
        let p = rf.parent[v as usize];
        if p != v {
            children[p as usize].push(v);
        }
    }
    for c in &mut children {
        c.sort_unstable();
    }
    // Subtree sizes, processing vertices in decreasing level order.
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_unstable_by_key(|&v| std::cmp::Reverse(rf.level[v as usize]));
    let mut size = vec![1u32; n];
    for &v in &order {
        let p = rf.parent[v as usize];
        if p != v {
            size[p as usize] += size[v as usize];
        }
    }
    let mut heavy_child: Vec<Option<u32>> = vec![None; n];
    for v in 0..n {
        let mut best: Option<(u32, u32)> = None; // (size, child) with tie -> smaller id
        for &c in &children[v] {
            let s = size[c as usize];
            if best.map_or(true, |(bs, _)| s > bs) {
                best = Some((s, c));
            }
        }
        heavy_child[v] = best.map(|(_, c)| c);
    }
    // Parent edge keys from the forest adjacency.
    let mut parent_edge: Vec<Option<EdgeKey>> = vec![None; n];
    for v in 0..n as u32 {
        for &(nbr, eid) in forest.neighbors(v) {
            if rf.parent[nbr as usize] == v && nbr != v {
                parent_edge[nbr as usize] = Some((forest.msf_weight(eid), eid));
            }
        }
    }
    // Maximal heavy paths start at roots and at lower endpoints of light edges.
    let mut path_id = vec![u32::MAX; n];
    let mut path_pos = vec![0u32; n];
    let mut paths: Vec<Vec<u32>> = Vec::new();
    let mut tops: Vec<u32> = (0..n as u32)
        .filter(|&v| {
            let p = rf.parent[v as usize];
            p == v || heavy_child[p as usize] != Some(v)
        })
        .collect();
    tops.sort_unstable();
    for top in tops {
        let id = paths.len() as u32;
        let mut path = Vec::new();
        let mut cur = top;
        loop {
            path_id[cur as usize] = id;
            path_pos[cur as usize] = path.len() as u32;
            path.push(cur);
            match heavy_child[cur as usize] {
                Some(c) => cur = c,
                None => break,
            }
        }
        paths.push(path);
    }
    let path_rmq: Vec<Option<SparseTableRmq<EdgeKey>>> = paths
        .iter()
        .map(|path| {
            if path.len() < 2 {
                None
            } else {
                let keys: Vec<EdgeKey> = path
                    .windows(2)
                    .map(|w| parent_edge[w[1] as usize].expect("heavy edge has a key"))
                    .collect();
                Some(SparseTableRmq::build(keys, RmqMode::Max))
            }
        })
        .collect();
    HeavyLight { heavy_child, path_id, path_pos, paths, parent_edge, path_rmq }
}

impl HeavyLight {
    /// Maximum edge key strictly inside one heavy path between positions
    /// `top_pos <= bottom_pos` (edge indices `top_pos .. bottom_pos`).
    pub fn path_segment_max(&self, path: u32, top_pos: u32, bottom_pos: u32) -> Result<Option<EdgeKey>> {
        if top_pos == bottom_pos {
            return Ok(None);
        }
        let rmq = self.path_rmq[path as usize]
            .as_ref()
            .expect("segment query on a single-vertex path");
        let idx = rmq.query(top_pos as usize, bottom_pos as usize - 1)?;
        Ok(Some(rmq.value(idx)))
    }

    /// Number of light edges on the path from `v` to its root.
    pub fn light_edges_to_root(&self, rf: &RootedForest, mut v: u32) -> usize {
        let mut count = 0;
        loop {
            let p = rf.parent[v as usize];
            if p == v {
                return count;
            }
            if self.heavy_child[p as usize] != Some(v) {
                count += 1;
            }
            v = p;
        }
    }
}

/// Per-vertex pivot lists: the endpoints of light edges on the root path
/// plus the vertex and its root, each with the maximum edge key on the path
/// from the vertex up to that pivot. Ordered by decreasing level, the vertex
/// itself first with the neutral maximum.
#[derive(Debug, Clone)]
pub struct PivotTable {
    pub lists: Vec<Vec<(u32, Option<EdgeKey>)>>,
}

/// Builds all pivot lists top-down in `O(n log n)` total work: a vertex
/// derives its list from its parent's by extending every maximum with the
/// parent edge key and keeping the parent entry only when the parent is a
/// pivot for this vertex.
pub fn build_pivots(rf: &RootedForest, hld: &HeavyLight) -> PivotTable {
    let n = rf.parent.len();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_unstable_by_key(|&v| rf.level[v as usize]);
    let mut lists: Vec<Vec<(u32, Option<EdgeKey>)>> = vec![Vec::new(); n];
    for &v in &order {
        let p = rf.parent[v as usize];
        if p == v {
            lists[v as usize] = vec![(v, None)];
            continue;
        }
        let wp = hld.parent_edge[v as usize].expect("non-root has a parent edge");
        let edge_vp_light = hld.heavy_child[p as usize] != Some(v);
        let gp = rf.parent[p as usize];
        let p_is_root = gp == p;
        let edge_p_up_light = !p_is_root && hld.heavy_child[gp as usize] != Some(p);
        let parent_is_pivot = edge_vp_light || p_is_root || edge_p_up_light;
        let mut list = Vec::with_capacity(lists[p as usize].len() + 1);
        list.push((v, None));
        for (i, &(x, m)) in lists[p as usize].iter().enumerate() {
            if i == 0 && !parent_is_pivot {
                debug_assert_eq!(x, p);
                continue;
            }
            let extended = Some(match m {
                Some(mk) => mk.max(wp),
                None => wp,
            });
            list.push((x, extended));
        }
        lists[v as usize] = list;
    }
    PivotTable { lists }
}

/// Maximum edge key on the tree path from `u` up to its ancestor `a`.
///
/// Splits the path at the lowest-level pivot `p` of `u` that still lies on
/// it: the precomputed prefix maximum covers `u..p` and the rest, `p..a`,
/// lies inside one heavy path and is answered by that path's RMQ.
pub fn path_max(
    rf: &RootedForest,
    lca: &EulerLca,
    hld: &HeavyLight,
    pivots: &PivotTable,
    u: u32,
    a: u32,
) -> Result<Option<EdgeKey>> {
    if u == a {
        return Ok(None);
    }
    if !lca.is_ancestor(rf, a, u) {
        return Err(Error::NotAncestor(a, u));
    }
    let list = &pivots.lists[u as usize];
    let mut best: Option<(u32, Option<EdgeKey>)> = None;
    for &(x, m) in list {
        if rf.level[x as usize] >= rf.level[a as usize] {
            best = Some((x, m));
        } else {
            break;
        }
    }
    let (p, prefix) = best.expect("u itself is always a valid pivot");
    if p == a {
        return Ok(prefix);
    }
    debug_assert_eq!(hld.path_id[p as usize], hld.path_id[a as usize]);
    let seg = hld.path_segment_max(
        hld.path_id[p as usize],
        hld.path_pos[a as usize],
        hld.path_pos[p as usize],
    )?;
    Ok(match (prefix, seg) {
        (None, s) => s,
        (pfx, None) => pfx,
        (Some(x), Some(y)) => Some(x.max(y)),
    })
}
