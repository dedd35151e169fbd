//! Deterministic graph generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::Graph;

/// Two disjoint cycles on `k` vertices each: the canonical high-diameter
/// input for the one-versus-two-cycle benchmark.
pub fn two_cycles(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::InvalidSize(format!("cycle length {k} < 3")));
    }
    let mut pairs = Vec::with_capacity(2 * k);
    for c in 0..2u32 {
        let base = c * k as u32;
        for i in 0..k as u32 {
            pairs.push((base + i, base + (i + 1) % k as u32));
        }
    }
    Graph::unweighted(2 * k, pairs)
}

/// Single cycle on `n` vertices.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidSize(format!("cycle length {n} < 3")));
    }
    let pairs = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
    Graph::unweighted(n, pairs)
}

/// Disjoint union of cycles with the given lengths.
pub fn cycle_union(lengths: &[usize]) -> Result<Graph> {
    let mut pairs = Vec::new();
    let mut base = 0u32;
    for &len in lengths {
        if len < 3 {
            return Err(Error::InvalidSize(format!("cycle length {len} < 3")));
        }
        for i in 0..len as u32 {
            pairs.push((base + i, base + (i + 1) % len as u32));
        }
        base += len as u32;
    }
    Graph::unweighted(base as usize, pairs)
}

/// Simple graph with exactly `m` distinct edges chosen uniformly without
/// replacement, deterministic in `seed`.
pub fn random_graph(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let max = n.saturating_mul(n.saturating_sub(1)) / 2;
    if m > max {
        return Err(Error::InvalidSize(format!(
            "{m} edges requested but only {max} are possible on {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(u32, u32)> = if max <= 4 * m.max(1) && max <= 1 << 22 {
        // Dense request: enumerate all pairs and take a random prefix.
        let mut all: Vec<(u32, u32)> = Vec::with_capacity(max);
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                all.push((u, v));
            }
        }
        all.shuffle(&mut rng);
        all.truncate(m);
        all
    } else {
        let mut seen = std::collections::HashSet::with_capacity(m * 2);
        let mut out = Vec::with_capacity(m);
        while out.len() < m {
            let u = rng.gen_range(0..n as u32);
            let v = rng.gen_range(0..n as u32);
            if u == v {
                continue;
            }
            let key = (u.min(v), u.max(v));
            if seen.insert(key) {
                out.push(key);
            }
        }
        out
    };
    Graph::unweighted(n, pairs)
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidSize("empty path".into()));
    }
    let pairs = (0..n.saturating_sub(1) as u32).map(|i| (i, i + 1)).collect();
    Graph::unweighted(n, pairs)
}

/// Uniform random attachment tree: vertex `v > 0` connects to a uniformly
/// random earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidSize("empty tree".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = (1..n as u32)
        .map(|v| (rng.gen_range(0..v), v))
        .collect();
    Graph::unweighted(n, pairs)
}

/// Star with center 0 and `n - 1` leaves.
pub fn star(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidSize("empty star".into()));
    }
    let pairs = (1..n as u32).map(|v| (0, v)).collect();
    Graph::unweighted(n, pairs)
}

/// `rows x cols` grid.
pub fn grid(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidSize("empty grid".into()));
    }
    let id = |r: usize, c: usize| (r * cols + c) as u32;
    let mut pairs = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                pairs.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                pairs.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::unweighted(rows * cols, pairs)
}

/// Attaches uniform random weights in `[1, limit]` to an unweighted graph.
/// Small limits are useful in tests because they force weight ties, which
/// exercises the edge-id tiebreak.
pub fn with_random_weights(g: &Graph, limit: u64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples = g
        .edges()
        .iter()
        .map(|e| (e.u, e.v, rng.gen_range(1..=limit)))
        .collect();
    Graph::new(g.n(), triples, true).expect("weight attachment preserves validity")
}
