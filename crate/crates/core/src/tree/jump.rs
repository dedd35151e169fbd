use crate::error::{Error, Result};
use crate::graph::ContractionMap;
use crate::runtime::{get_u32, u32s, RoundKind, Runtime, TableId};

/// Collapses an acyclic parent map to its roots by repeated pointer
/// doubling over the store: one shuffle round publishes the map, then each
/// doubling round replaces every pointer by its pointer's pointer until a
/// round passes with no change. Roots must map to themselves.
///
/// Returns the contraction map and the number of doubling rounds used.
/// Errors with `CycleDetected` if no fixpoint is reached within
/// `ceil(log2 n) + 2` doubling rounds.
pub fn pointer_jump(rt: &mut Runtime, parent: &[u32]) -> Result<(ContractionMap, u32)> {
    let n = parent.len();
    if n == 0 {
        return Ok((ContractionMap::from_vec(Vec::new()), 0));
    }
    let mut table = rt.table();
    let items: Vec<(u32, u32)> = parent.iter().enumerate().map(|(v, &p)| (v as u32, p)).collect();
    publish_pointers(rt, table, &items)?;

    let limit = (n.max(2) as f64).log2().ceil() as u32 + 2;
    let mut current = items;
    let mut rounds = 0u32;
    loop {
        if rounds >= limit {
            return Err(Error::CycleDetected);
        }
        let next_table = rt.table();
        rt.round(RoundKind::Map, &current, |&(v, _)| v as u64, |ctx, mine, store| {
            for &(v, p) in mine {
                let vals = ctx.lookup(store, &table.key1(p))?;
                let pp = get_u32(&vals[0], 0);
                ctx.emit(next_table.key1(v), u32s(&[pp]))?;
            }
            Ok(())
        })?;
        rounds += 1;
        // Both scans are sorted by vertex id, so the fixpoint check is a zip.
        let next: Vec<(u32, u32)> = rt
            .store()
            .scan(next_table)
            .into_iter()
            .map(|(payload, values)| {
                let v = u32::from_be_bytes(payload[..4].try_into().unwrap());
                (v, get_u32(&values[0], 0))
            })
            .collect();
        let changed = next.iter().zip(current.iter()).any(|(a, b)| a.1 != b.1);
        rt.clear_table(table);
        table = next_table;
        current = next;
        if !changed {
            break;
        }
    }
    rt.clear_table(table);
    let map: Vec<u32> = {
        let mut m = vec![0u32; n];
        for &(v, p) in &current {
            m[v as usize] = p;
        }
        m
    };
    Ok((ContractionMap::from_vec(map), rounds))
}

/// Publishes a parent map as one shuffle round (grouping by vertex).
pub fn publish_pointers(rt: &mut Runtime, table: TableId, items: &[(u32, u32)]) -> Result<()> {
    rt.round(RoundKind::Shuffle, items, |&(v, _)| v as u64, |ctx, mine, _| {
        for &(v, p) in mine {
            ctx.emit(table.key1(v), u32s(&[p]))?;
        }
        Ok(())
    })
}

/// Collapses a parent map already resident in `table` to roots in a single
/// adaptive round: every vertex repeatedly queries its current pointer until
/// it reaches a self-loop. Per-machine caching makes shared chain suffixes
/// cheap. Vertices absent from the table map to themselves.
///
/// Returns the map and the table its writes landed in, so the next round
/// can read the roots without republishing; the caller clears the table.
pub fn pointer_chase_round(
    rt: &mut Runtime,
    table: TableId,
    n: usize,
) -> Result<(ContractionMap, TableId)> {
    let out = rt.table();
    let items: Vec<u32> = (0..n as u32).collect();
    rt.round(RoundKind::Map, &items, |&v| v as u64, |ctx, mine, store| {
        for &v in mine {
            let mut cur = v;
            let mut steps = 0usize;
            loop {
                let vals = ctx.lookup(store, &table.key1(cur))?;
                if vals.is_empty() {
                    break;
                }
                let p = get_u32(&vals[0], 0);
                if p == cur {
                    break;
                }
                cur = p;
                steps += 1;
                if steps > n {
                    return Err(Error::CycleDetected);
                }
            }
            ctx.emit(out.key1(v), u32s(&[cur]))?;
        }
        Ok(())
    })?;
    let mut map = vec![0u32; n];
    for (payload, values) in rt.store().scan(out) {
        let v = u32::from_be_bytes(payload[..4].try_into().unwrap());
        map[v as usize] = get_u32(&values[0], 0);
    }
    Ok((ContractionMap::from_vec(map), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runtime::RuntimeConfig;

    fn rt() -> Runtime {
        Runtime::new(RuntimeConfig {
            machines: 4,
            space: 256,
            seed: 5,
            ..RuntimeConfig::default()
        })
    }

    #[test]
    fn chain_of_eight_doubles_to_head() {
        let mut rt = rt();
        // 0 <- 1 <- 2 ... <- 8 (chain length 8).
        let parent: Vec<u32> = (0..9u32).map(|v| v.saturating_sub(1)).collect();
        let (map, rounds) = pointer_jump(&mut rt, &parent).unwrap();
        assert!(map.as_slice().iter().all(|&r| r == 0));
        assert!(rounds <= 4, "rounds = {rounds}");
    }

    #[test]
    fn all_roots_is_identity_in_one_round() {
        let mut rt = rt();
        let parent: Vec<u32> = (0..16).collect();
        let (map, rounds) = pointer_jump(&mut rt, &parent).unwrap();
        assert_eq!(map, ContractionMap::identity(16));
        assert_eq!(rounds, 1);
    }

    #[test]
    fn star_fixpoint_after_one_round() {
        let mut rt = rt();
        let mut parent: Vec<u32> = vec![0; 10];
        parent[0] = 0;
        for v in 1..10 {
            parent[v] = 0;
        }
        let (map, rounds) = pointer_jump(&mut rt, &parent).unwrap();
        assert!(map.as_slice().iter().all(|&r| r == 0));
        assert_eq!(rounds, 1);
    }

    #[test]
    fn cycle_is_detected() {
        let mut rt = rt();
        let parent = vec![1u32, 2, 0];
        assert_eq!(pointer_jump(&mut rt, &parent), Err(Error::CycleDetected));
    }

    #[test]
    fn chase_matches_doubling() {
        let mut rt1 = rt();
        let mut rt2 = rt();
        // Two chains and one star.
        let parent = vec![0u32, 0, 1, 2, 4, 4, 5, 6, 8, 8, 8];
        let (doubled, _) = pointer_jump(&mut rt1, &parent).unwrap();
        let t = rt2.table();
        let items: Vec<(u32, u32)> = parent.iter().enumerate().map(|(v, &p)| (v as u32, p)).collect();
        publish_pointers(&mut rt2, t, &items).unwrap();
        let (chased, out) = pointer_chase_round(&mut rt2, t, parent.len()).unwrap();
        rt2.clear_table(out);
        assert_eq!(doubled, chased);
        // The chase consumes exactly one round after the publish shuffle.
        assert_eq!(rt2.metrics().rounds, 2);
    }

    #[test]
    fn jump_round_bound_follows_chain_length() {
        for len in [1usize, 2, 3, 5, 9, 17, 33] {
            let mut rt = rt();
            let parent: Vec<u32> = (0..=len as u32).map(|v| v.saturating_sub(1)).collect();
            let (_, rounds) = pointer_jump(&mut rt, &parent).unwrap();
            let bound = (len.max(1) as f64).log2().ceil() as u32 + 1;
            assert!(rounds <= bound, "len={len} rounds={rounds} bound={bound}");
        }
    }
}
