use std::collections::HashMap;

/// Handle for one logical table inside a [`DhtStore`].
///
/// Multiple logical tables share one store; the table id is a two-byte key
/// prefix handed out by the runtime so stages never collide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TableId(pub(crate) u16);

impl TableId {
    #[inline]
    fn prefix(self) -> [u8; 2] {
        self.0.to_be_bytes()
    }

    /// Key with no payload (a table-wide singleton).
    pub fn key0(self) -> Vec<u8> {
        self.prefix().to_vec()
    }

    /// Key addressing a single 32-bit id (typically a vertex or an edge).
    pub fn key1(self, a: u32) -> Vec<u8> {
        let mut k = Vec::with_capacity(6);
        k.extend_from_slice(&self.prefix());
        k.extend_from_slice(&a.to_be_bytes());
        k
    }

    /// Key addressing an ordered pair of 32-bit ids.
    pub fn key2(self, a: u32, b: u32) -> Vec<u8> {
        let mut k = Vec::with_capacity(10);
        k.extend_from_slice(&self.prefix());
        k.extend_from_slice(&a.to_be_bytes());
        k.extend_from_slice(&b.to_be_bytes());
        k
    }

    /// Key addressing a triple of 32-bit ids.
    pub fn key3(self, a: u32, b: u32, c: u32) -> Vec<u8> {
        let mut k = Vec::with_capacity(14);
        k.extend_from_slice(&self.prefix());
        k.extend_from_slice(&a.to_be_bytes());
        k.extend_from_slice(&b.to_be_bytes());
        k.extend_from_slice(&c.to_be_bytes());
        k
    }
}

#[derive(Debug, Clone)]
pub(crate) struct StoredValue {
    pub origin: u32,
    pub bytes: Vec<u8>,
}

/// The multi-valued key-value store shared by all rounds of one execution.
///
/// Conceptually the model uses a sequence of stores, one per round, each
/// frozen once its round ends. The simulator keeps their union: every value
/// is tagged with the round that wrote it, writes become visible only after
/// the round barrier, and reads during round `i` observe exactly the values
/// with origin `< i`. Round isolation is asserted on every lookup.
#[derive(Debug, Default)]
pub struct DhtStore {
    round: u32,
    map: HashMap<Vec<u8>, Vec<StoredValue>>,
}

impl DhtStore {
    pub fn new() -> Self {
        DhtStore::default()
    }

    /// Index of the last completed round; everything stored is frozen.
    pub fn round_index(&self) -> u32 {
        self.round
    }

    pub(crate) fn values(&self, key: &[u8]) -> Option<&[StoredValue]> {
        self.map.get(key).map(|v| v.as_slice())
    }

    /// Number of distinct keys currently stored.
    pub fn num_keys(&self) -> usize {
        self.map.len()
    }

    /// Driver-side extraction of a whole table, sorted by key payload.
    ///
    /// This is how results leave the model at the end of a stage; it is not
    /// metered (machines must use `MachineContext::lookup`).
    pub fn scan(&self, table: TableId) -> Vec<(Vec<u8>, Vec<Vec<u8>>)> {
        let prefix = table.prefix();
        let mut out: Vec<(Vec<u8>, Vec<Vec<u8>>)> = self
            .map
            .iter()
            .filter(|(k, _)| k.len() >= 2 && k[..2] == prefix)
            .map(|(k, vs)| {
                (
                    k[2..].to_vec(),
                    vs.iter().map(|v| v.bytes.clone()).collect(),
                )
            })
            .collect();
        out.sort();
        out
    }

    /// Drops a table, e.g. a stage's scratch adjacency. Driver-level.
    pub fn clear(&mut self, table: TableId) {
        let prefix = table.prefix();
        self.map.retain(|k, _| !(k.len() >= 2 && k[..2] == prefix));
    }

    /// True if every stored value originates from round `<= round`.
    pub fn origins_at_most(&self, round: u32) -> bool {
        self.map
            .values()
            .all(|vs| vs.iter().all(|v| v.origin <= round))
    }

    /// Inserts input data as round-0 content (the model's initial store).
    pub(crate) fn seed(&mut self, pairs: impl IntoIterator<Item = (Vec<u8>, Vec<u8>)>) {
        assert_eq!(self.round, 0, "input may only be seeded before round 1");
        for (k, v) in pairs {
            self.map
                .entry(k)
                .or_default()
                .push(StoredValue { origin: 0, bytes: v });
        }
    }

    /// Merges the write buffers of one finished round.
    ///
    /// `writes` must be ordered by machine id so the merge is deterministic.
    /// In a shuffle round the values newly added under each key are put in a
    /// stable byte order, which is the grouping contract of the shuffle.
    pub(crate) fn merge_round(
        &mut self,
        round: u32,
        writes: Vec<Vec<(Vec<u8>, Vec<u8>)>>,
        grouped: bool,
    ) {
        assert_eq!(round, self.round + 1);
        let mut batch: HashMap<Vec<u8>, Vec<Vec<u8>>> = HashMap::new();
        for machine_buf in writes {
            for (k, v) in machine_buf {
                batch.entry(k).or_default().push(v);
            }
        }
        for (k, mut vs) in batch {
            if grouped {
                vs.sort();
            }
            let entry = self.map.entry(k).or_default();
            entry.extend(vs.into_iter().map(|bytes| StoredValue { origin: round, bytes }));
        }
        self.round = round;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_is_sorted_and_scoped_to_table() {
        let mut s = DhtStore::new();
        let ta = TableId(1);
        let tb = TableId(2);
        s.seed(vec![
            (ta.key1(5), b"e".to_vec()),
            (ta.key1(1), b"a".to_vec()),
            (tb.key1(1), b"x".to_vec()),
        ]);
        let scanned = s.scan(ta);
        assert_eq!(scanned.len(), 2);
        assert_eq!(scanned[0].0, 1u32.to_be_bytes().to_vec());
        assert_eq!(scanned[1].0, 5u32.to_be_bytes().to_vec());
        s.clear(ta);
        assert_eq!(s.scan(ta).len(), 0);
        assert_eq!(s.scan(tb).len(), 1);
    }

    #[test]
    fn grouped_merge_sorts_values_within_key() {
        let mut s = DhtStore::new();
        let t = TableId(7);
        let writes = vec![
            vec![(t.key1(1), vec![9u8]), (t.key1(1), vec![3u8])],
            vec![(t.key1(1), vec![5u8])],
        ];
        s.merge_round(1, writes, true);
        let got = s.scan(t);
        assert_eq!(got[0].1, vec![vec![3u8], vec![5u8], vec![9u8]]);
    }
}
