use crate::hashing::{self, tag};

/// Random vertex priorities: 64-bit values hashed from `(seed, vertex id)`,
/// with the id as tiebreak so the order `(rank, id)` is strict and total.
/// A smaller pair means an earlier position in the permutation.
#[derive(Debug, Clone)]
pub struct VertexRank {
    seed: u64,
}

impl VertexRank {
    pub fn new(seed: u64) -> Self {
        VertexRank { seed }
    }

    #[inline]
    pub fn rank(&self, v: u32) -> u64 {
        hashing::hash2(self.seed, tag::VERTEX_RANK, v as u64)
    }

    #[inline]
    pub fn key(&self, v: u32) -> (u64, u32) {
        (self.rank(v), v)
    }

    /// True if `a` comes before `b` in the permutation.
    #[inline]
    pub fn before(&self, a: u32, b: u32) -> bool {
        self.key(a) < self.key(b)
    }
}

/// Random edge priorities, same construction keyed by edge id.
#[derive(Debug, Clone)]
pub struct EdgeRank {
    seed: u64,
}

impl EdgeRank {
    pub fn new(seed: u64) -> Self {
        EdgeRank { seed }
    }

    #[inline]
    pub fn rank(&self, eid: u32) -> u64 {
        hashing::hash2(self.seed, tag::EDGE_RANK, eid as u64)
    }

    #[inline]
    pub fn key(&self, eid: u32) -> (u64, u32) {
        (self.rank(eid), eid)
    }

    /// Rank mapped into [0, 1) for threshold filters.
    #[inline]
    pub fn normalized(&self, eid: u32) -> f64 {
        self.rank(eid) as f64 / 2.0f64.powi(64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_are_deterministic_and_totally_ordered() {
        let vr = VertexRank::new(11);
        let vr2 = VertexRank::new(11);
        for v in 0..100 {
            assert_eq!(vr.rank(v), vr2.rank(v));
        }
        let mut keys: Vec<_> = (0..100).map(|v| vr.key(v)).collect();
        keys.sort_unstable();
        keys.dedup();
        assert_eq!(keys.len(), 100);
    }

    #[test]
    fn normalized_is_in_unit_interval() {
        let er = EdgeRank::new(5);
        for e in 0..100 {
            let x = er.normalized(e);
            assert!((0.0..1.0).contains(&x));
        }
    }
}
