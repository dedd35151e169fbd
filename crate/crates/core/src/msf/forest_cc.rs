//! Forest connectivity in a constant number of rounds: each tree becomes a
//! directed Euler cycle over its arcs, then a fixed number of sampling
//! passes shrink every cycle (sampled arcs walk forward to the next sample),
//! and the residual is finished on one machine.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{ContractionMap, Graph};
use crate::hashing::{self, tag};
use crate::oracle::UnionFind;
use crate::runtime::{get_u32, u32s, RoundKind, Runtime, TableId};

const CYCLE_SALT: u64 = 0x6663_6300;

/// Component labels (minimum member vertex id) of a forest.
pub fn forest_connectivity(rt: &mut Runtime, f: &Graph, eps: f64) -> Result<ContractionMap> {
    let n = f.n();
    // Validate and bail out early on trivial inputs.
    {
        let mut uf = UnionFind::new(n);
        for e in f.edges() {
            if !uf.union(e.u, e.v) {
                return Err(Error::NotAForest);
            }
        }
    }
    if f.m() == 0 {
        return Ok(ContractionMap::identity(n));
    }

    // Arcs 2e and 2e+1 are the two directions of edge e; the successor of
    // an arc into y continues with y's next incident edge, which turns each
    // tree into one directed cycle over its 2(size-1) arcs.
    let m = f.m();
    let arc_src = |arc: u32| -> u32 {
        let e = f.edge(arc / 2);
        if arc % 2 == 0 {
            e.u
        } else {
            e.v
        }
    };
    let arc_dst = |arc: u32| -> u32 {
        let e = f.edge(arc / 2);
        if arc % 2 == 0 {
            e.v
        } else {
            e.u
        }
    };
    let succ_of = |arc: u32| -> u32 {
        let y = arc_dst(arc);
        let inc = f.neighbors(y);
        let pos = inc
            .iter()
            .position(|&(_, eid)| eid == arc / 2)
            .expect("arc edge incident to its head");
        let (_, next_eid) = inc[(pos + 1) % inc.len()];
        let e = f.edge(next_eid);
        if e.u == y {
            2 * next_eid
        } else {
            2 * next_eid + 1
        }
    };

    let arcs: Vec<u32> = (0..2 * m as u32).collect();
    let succ_items: Vec<(u32, u32)> = arcs.iter().map(|&a| (a, succ_of(a))).collect();
    let mut table = rt.table();
    rt.round(RoundKind::Shuffle, &succ_items, |&(a, _)| a as u64, |ctx, mine, _| {
        for &(a, s) in mine {
            ctx.emit(table.key1(a), u32s(&[s]))?;
        }
        Ok(())
    })?;

    let iterations = ((3.0 / eps).ceil() as u32).clamp(1, 12);
    let p = (n as f64).powf(-eps / 2.0).min(1.0);
    let mut live: Vec<u32> = arcs;
    let mut succ_mirror: HashMap<u32, u32> = succ_items.into_iter().collect();
    // Deferred nodes keep the successor they had when their cycle went a
    // pass without samples; the finish resolves them.
    let mut leftovers: Vec<(u32, u32)> = Vec::new();
    let mut assignments: Vec<HashMap<u32, u32>> = Vec::new();

    for iter in 1..=iterations {
        if live.is_empty() {
            break;
        }
        let salt = CYCLE_SALT + iter as u64;
        let seed = rt.config().seed;
        let is_sampled =
            |node: u32| hashing::hash3(seed, tag::SAMPLE, salt, node as u64) <= scaled(p);
        let samples: Vec<u32> = live.iter().copied().filter(|&x| is_sampled(x)).collect();
        let next_table = rt.table();
        let cur_table = table;
        let live_len = live.len();
        let shrink = rt.round_out(
            RoundKind::Map,
            &samples,
            |&s| s as u64,
            |ctx, mine, store, sink| {
                for &s in mine {
                    let mut cur = s;
                    let mut steps = 0usize;
                    loop {
                        let vals = ctx.lookup(store, &cur_table.key1(cur))?;
                        let nxt = get_u32(&vals[0], 0);
                        steps += 1;
                        if steps > live_len {
                            return Err(Error::CycleDetected);
                        }
                        if is_sampled(nxt) {
                            ctx.emit(next_table.key1(s), u32s(&[nxt]))?;
                            break;
                        }
                        sink.push(ctx, (nxt, s))?;
                        cur = nxt;
                    }
                }
                Ok(())
            },
        )?;
        let mut assigned: HashMap<u32, u32> = HashMap::new();
        for (covered, owner) in shrink {
            assigned.insert(covered, owner);
        }
        // Cycles that drew no sample are frozen at this level.
        let sampled_set: std::collections::HashSet<u32> = samples.iter().copied().collect();
        for &x in &live {
            if !sampled_set.contains(&x) && !assigned.contains_key(&x) {
                leftovers.push((x, succ_mirror[&x]));
            }
        }
        assignments.push(assigned);
        succ_mirror = rt
            .store()
            .scan(next_table)
            .into_iter()
            .map(|(payload, values)| {
                let s = u32::from_be_bytes(payload[..4].try_into().unwrap());
                (s, get_u32(&values[0], 0))
            })
            .collect();
        rt.clear_table(cur_table);
        table = next_table;
        live = samples;
    }
    rt.clear_table(table);

    // Single-machine finish over the residual cycles plus frozen segments.
    let mut uf = UnionFind::new(2 * m);
    for (&x, &s) in &succ_mirror {
        uf.union(x, s);
    }
    for &(x, s) in &leftovers {
        uf.union(x, s);
    }
    // Fold the per-pass assignments back, last pass first.
    for assigned in assignments.iter().rev() {
        for (&covered, &owner) in assigned {
            uf.union(covered, owner);
        }
    }
    // Arc components to vertex labels: the two arcs of an edge share a
    // component with both endpoints.
    let mut min_vertex: HashMap<u32, u32> = HashMap::new();
    for arc in 0..2 * m as u32 {
        let rep = uf.find(arc);
        let v = arc_src(arc);
        min_vertex
            .entry(rep)
            .and_modify(|cur| *cur = (*cur).min(v))
            .or_insert(v);
    }
    let mut labels: Vec<u32> = (0..n as u32).collect();
    for arc in 0..2 * m as u32 {
        let rep = uf.find(arc);
        let v = arc_src(arc) as usize;
        labels[v] = min_vertex[&rep];
    }
    Ok(ContractionMap::from_vec(labels))
}

#[inline]
fn scaled(p: f64) -> u64 {
    if p >= 1.0 {
        u64::MAX
    } else {
        (p * u64::MAX as f64) as u64
    }
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
    fn two_disjoint_edges() {
        let g = Graph::unweighted(4, vec![(0, 1), (2, 3)]).unwrap();
        let mut rt = rt_for(&g, 1);
        let c = forest_connectivity(&mut rt, &g, 0.5).unwrap();
        assert_eq!(c.component_count(), 2);
        assert_eq!(c.as_slice(), &[0, 0, 2, 2]);
    }

    #[test]
    fn long_path_is_one_component() {
        let g = generate::path(10_000).unwrap();
        let mut rt = rt_for(&g, 7);
        let c = forest_connectivity(&mut rt, &g, 0.5).unwrap();
        assert_eq!(c.component_count(), 1);
        assert!(c.as_slice().iter().all(|&l| l == 0));
        // One shuffle to publish successors plus the fixed sampling passes.
        assert!(rt.metrics().rounds <= 1 + 12);
    }

    #[test]
    fn full_sampling_keeps_cycle_size() {
        // eps = 0 gives sampling probability 1: every pass keeps all arcs.
        let g = generate::path(50).unwrap();
        let mut rt = rt_for(&g, 3);
        let c = forest_connectivity(&mut rt, &g, 0.0).unwrap();
        assert_eq!(c.component_count(), 1);
    }

    #[test]
    fn random_forests_match_union_find() {
        for seed in 0..6u64 {
            let tree = generate::random_tree(500, seed).unwrap();
            // Remove a few edges to split it into a forest.
            let triples: Vec<(u32, u32, u64)> = tree
                .edges()
                .iter()
                .filter(|e| e.id % 97 != 0)
                .map(|e| (e.u, e.v, 0))
                .collect();
            let f = Graph::new(500, triples, false).unwrap();
            let mut rt = rt_for(&f, seed);
            let got = forest_connectivity(&mut rt, &f, 0.5).unwrap();
            assert_eq!(got.as_slice(), oracle::union_find_cc(&f).as_slice(), "seed {seed}");
        }
    }

    #[test]
    fn cycle_input_is_rejected() {
        let g = generate::cycle(5).unwrap();
        let mut rt = rt_for(&g, 1);
        assert!(matches!(
            forest_connectivity(&mut rt, &g, 0.5),
            Err(Error::NotAForest)
        ));
    }
}
