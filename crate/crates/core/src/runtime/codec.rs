//! Big-endian encoding helpers for store keys and values.
//!
//! Everything is big-endian so that the byte order used by shuffle grouping
//! coincides with numeric order; a value that starts with a rank sorts by
//! that rank.

pub fn put_u32(buf: &mut Vec<u8>, x: u32) {
    buf.extend_from_slice(&x.to_be_bytes());
}

pub fn put_u64(buf: &mut Vec<u8>, x: u64) {
    buf.extend_from_slice(&x.to_be_bytes());
}

pub fn get_u32(buf: &[u8], off: usize) -> u32 {
    u32::from_be_bytes(buf[off..off + 4].try_into().unwrap())
}

pub fn get_u64(buf: &[u8], off: usize) -> u64 {
    u64::from_be_bytes(buf[off..off + 8].try_into().unwrap())
}

pub fn u32s(xs: &[u32]) -> Vec<u8> {
    let mut v = Vec::with_capacity(xs.len() * 4);
    for &x in xs {
        put_u32(&mut v, x);
    }
    v
}

/// `(rank, a, b)` triple; byte order equals `(rank, a, b)` numeric order.
pub fn rank_pair(rank: u64, a: u32, b: u32) -> Vec<u8> {
    let mut v = Vec::with_capacity(16);
    put_u64(&mut v, rank);
    put_u32(&mut v, a);
    put_u32(&mut v, b);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn byte_order_matches_numeric_order() {
        let a = rank_pair(5, 0, 9);
        let b = rank_pair(5, 1, 0);
        let c = rank_pair(6, 0, 0);
        assert!(a < b && b < c);
        assert_eq!(get_u64(&a, 0), 5);
        assert_eq!(get_u32(&a, 8), 0);
        assert_eq!(get_u32(&a, 12), 9);
    }
}
