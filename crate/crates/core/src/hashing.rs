//! Seeded integer hashing used for ranks, machine assignment and sampling.
//!
//! Ranks in (0, 1) are realized as 64-bit integers produced by a seeded
//! mixer, with the vertex/edge id as the tiebreak. All randomness that must
//! be globally consistent across machines (priorities, colors, sampling
//! decisions) goes through these functions so replays are bit-identical.

/// Domain separation tags so the same seed can drive independent streams.
pub mod tag {
    pub const VERTEX_RANK: u64 = 0x5645_5254_4558_0001;
    pub const EDGE_RANK: u64 = 0x4544_4745_0000_0002;
    pub const ASSIGN: u64 = 0x4153_5349_474e_0003;
    pub const COLOR: u64 = 0x434f_4c4f_5200_0004;
    pub const SAMPLE: u64 = 0x5341_4d50_4c45_0005;
    pub const MACHINE_RNG: u64 = 0x4d52_4e47_0000_0006;
}

/// splitmix64 finalizer; full-period mixing of a 64-bit state.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Hash of (seed, domain tag, x).
#[inline]
pub fn hash2(seed: u64, tag: u64, x: u64) -> u64 {
    mix64(seed ^ mix64(tag ^ mix64(x)))
}

/// Hash of (seed, domain tag, x, y).
#[inline]
pub fn hash3(seed: u64, tag: u64, x: u64, y: u64) -> u64 {
    mix64(seed ^ mix64(tag ^ mix64(x ^ mix64(y))))
}

/// Bernoulli(p) decision, deterministic in its inputs.
#[inline]
pub fn coin(seed: u64, tag: u64, x: u64, p: f64) -> bool {
    debug_assert!((0.0..=1.0).contains(&p));
    // Compare against a scaled threshold; p == 1.0 must always pass.
    if p >= 1.0 {
        return true;
    }
    let threshold = (p * (u64::MAX as f64)) as u64;
    hash2(seed, tag, x) <= threshold
}

/// A tiny deterministic stream generator (splitmix64) for per-machine use.
#[derive(Debug, Clone)]
pub struct SplitMix {
    state: u64,
}

impl SplitMix {
    pub fn new(seed: u64) -> Self {
        SplitMix { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixing_is_deterministic() {
        assert_eq!(hash2(7, tag::VERTEX_RANK, 42), hash2(7, tag::VERTEX_RANK, 42));
        assert_ne!(hash2(7, tag::VERTEX_RANK, 42), hash2(8, tag::VERTEX_RANK, 42));
        assert_ne!(hash2(7, tag::VERTEX_RANK, 42), hash2(7, tag::EDGE_RANK, 42));
    }

    #[test]
    fn coin_degenerate_probabilities() {
        for x in 0..64 {
            assert!(coin(1, tag::SAMPLE, x, 1.0));
            assert!(!coin(1, tag::SAMPLE, x, 0.0));
        }
    }

    #[test]
    fn splitmix_stream_is_reproducible() {
        let mut a = SplitMix::new(99);
        let mut b = SplitMix::new(99);
        for _ in 0..16 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }
}
