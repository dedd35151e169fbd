use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RmqMode {
    Min,
    Max,
}

/// Sparse-table range minimum/maximum structure over dyadic windows.
///
/// `rows[y][x]` holds the arg-best index over `values[x .. x + 2^y]`
/// (clamped to the array); a query combines the two windows covering
/// `[i, j]`. Ties resolve toward the smaller index.
#[derive(Debug, Clone)]
pub struct SparseTableRmq<T> {
    values: Vec<T>,
    rows: Vec<Vec<u32>>,
    mode: RmqMode,
}

impl<T: Ord + Copy> SparseTableRmq<T> {
    pub fn build(values: Vec<T>, mode: RmqMode) -> Self {
        let k = values.len();
        let levels = if k <= 1 { 1 } else { k.ilog2() as usize + 1 };
        let mut rows: Vec<Vec<u32>> = Vec::with_capacity(levels);
        rows.push((0..k as u32).collect());
        for y in 1..levels {
            let half = 1usize << (y - 1);
            let prev = &rows[y - 1];
            let row: Vec<u32> = (0..k)
                .map(|x| {
                    if x + half < k {
                        let (a, b) = (prev[x], prev[x + half]);
                        Self::pick(&values, mode, a, b)
                    } else {
                        prev[x]
                    }
                })
                .collect();
            rows.push(row);
        }
        SparseTableRmq { values, rows, mode }
    }

    #[inline]
    fn pick(values: &[T], mode: RmqMode, left: u32, right: u32) -> u32 {
        let better = match mode {
            RmqMode::Min => values[right as usize] < values[left as usize],
            RmqMode::Max => values[right as usize] > values[left as usize],
        };
        if better {
            right
        } else {
            left
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, idx: usize) -> T {
        self.values[idx]
    }

    /// Raw table cell, exposed so the structure can be shipped into a store.
    pub fn cell(&self, y: usize, x: usize) -> u32 {
        self.rows[y][x]
    }

    pub fn levels(&self) -> usize {
        self.rows.len()
    }

    /// Arg-best index over `values[i ..= j]`.
    pub fn query(&self, i: usize, j: usize) -> Result<usize> {
        if i > j || j >= self.values.len() {
            return Err(Error::OutOfRange { i, j, len: self.values.len() });
        }
        let t = (j - i + 1).ilog2() as usize;
        let a = self.rows[t][i];
        let b = self.rows[t][j + 1 - (1usize << t)];
        Ok(Self::pick(&self.values, self.mode, a, b) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn scan_min(a: &[u64], i: usize, j: usize) -> usize {
        let mut best = i;
        for x in i..=j {
            if a[x] < a[best] {
                best = x;
            }
        }
        best
    }

    #[test]
    fn documented_examples() {
        let t = SparseTableRmq::build(vec![3u64, 1, 4, 1, 5], RmqMode::Min);
        // Tie between indices 1 and 3 resolves to 1.
        assert_eq!(t.query(1, 3).unwrap(), 1);
        assert_eq!(t.query(2, 2).unwrap(), 2);
        let incr = SparseTableRmq::build((0..17u64).collect(), RmqMode::Min);
        assert_eq!(incr.query(0, 16).unwrap(), 0);
        assert!(t.query(3, 1).is_err());
        assert!(t.query(0, 5).is_err());
    }

    #[test]
    fn matches_linear_scan_exhaustively() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let k = rng.gen_range(1..=64);
            let a: Vec<u64> = (0..k).map(|_| rng.gen_range(0..16)).collect();
            let t = SparseTableRmq::build(a.clone(), RmqMode::Min);
            for i in 0..k {
                for j in i..k {
                    assert_eq!(t.query(i, j).unwrap(), scan_min(&a, i, j));
                }
            }
        }
    }

    #[test]
    fn matches_linear_scan_on_large_random_arrays() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..20 {
            let k = rng.gen_range(65..2000);
            let a: Vec<u64> = (0..k).map(|_| rng.gen()).collect();
            let t = SparseTableRmq::build(a.clone(), RmqMode::Min);
            for _ in 0..200 {
                let i = rng.gen_range(0..k);
                let j = rng.gen_range(i..k);
                assert_eq!(t.query(i, j).unwrap(), scan_min(&a, i, j));
            }
        }
    }

    #[test]
    fn max_mode_picks_leftmost_maximum() {
        let t = SparseTableRmq::build(vec![2u64, 9, 9, 1], RmqMode::Max);
        assert_eq!(t.query(0, 3).unwrap(), 1);
    }
}
