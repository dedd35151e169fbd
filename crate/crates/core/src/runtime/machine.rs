use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hashing::{self, SplitMix};

use super::store::DhtStore;

/// Per-machine execution handle for one round.
///
/// Holds the communication counters, the per-machine lookup cache and a
/// deterministic random stream seeded by `(seed, round, machine_id)`. The
/// context also buffers this machine's writes; they become visible in the
/// store only after the round barrier.
pub struct MachineContext {
    pub machine_id: u32,
    space: u64,
    quota_slack: u64,
    queries_used: u64,
    writes_used: u64,
    bytes_kv: u64,
    caching: bool,
    max_pair_bytes: usize,
    cache: HashMap<Vec<u8>, Vec<Vec<u8>>>,
    rng: SplitMix,
    emits: Vec<(Vec<u8>, Vec<u8>)>,
    tally: Arc<AtomicU64>,
}

impl MachineContext {
    pub(crate) fn new(
        machine_id: u32,
        space: u64,
        quota_slack: u64,
        caching: bool,
        max_pair_bytes: usize,
        seed: u64,
        round: u32,
        tally: Arc<AtomicU64>,
    ) -> Self {
        let rng_seed = hashing::hash3(seed, hashing::tag::MACHINE_RNG, round as u64, machine_id as u64);
        MachineContext {
            machine_id,
            space,
            quota_slack,
            queries_used: 0,
            writes_used: 0,
            bytes_kv: 0,
            caching,
            max_pair_bytes,
            cache: HashMap::new(),
            rng: SplitMix::new(rng_seed),
            emits: Vec::new(),
            tally,
        }
    }

    fn quota(&self) -> u64 {
        self.quota_slack.saturating_mul(self.space)
    }

    /// Queries issued so far in this round (cache hits excluded).
    pub fn queries_used(&self) -> u64 {
        self.queries_used
    }

    pub fn writes_used(&self) -> u64 {
        self.writes_used
    }

    /// Deterministic per-machine random stream.
    pub fn rng_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Fetches all values stored under `key` in the frozen previous-round
    /// store. A repeated lookup of the same key on the same machine is
    /// served from the cache and does not count as communication.
    pub fn lookup(&mut self, store: &DhtStore, key: &[u8]) -> Result<Vec<Vec<u8>>> {
        if self.caching {
            if let Some(hit) = self.cache.get(key) {
                return Ok(hit.clone());
            }
        }
        self.queries_used += 1;
        if self.queries_used > self.quota() {
            return Err(Error::QuotaExceeded {
                machine: self.machine_id,
                kind: "query",
                quota: self.quota(),
            });
        }
        self.tally.fetch_add(1, Ordering::Relaxed);
        let values: Vec<Vec<u8>> = match store.values(key) {
            Some(vs) => {
                debug_assert!(
                    vs.iter().all(|v| v.origin <= store.round_index()),
                    "round isolation violated"
                );
                vs.iter().map(|v| v.bytes.clone()).collect()
            }
            None => Vec::new(),
        };
        self.bytes_kv += key.len() as u64;
        self.bytes_kv += values.iter().map(|v| v.len() as u64).sum::<u64>();
        if self.caching {
            self.cache.insert(key.to_vec(), values.clone());
        }
        Ok(values)
    }

    /// Accounts for one item sent to the round's output collection (a
    /// map-stage output that flows to the driver rather than the store).
    pub(crate) fn count_output(&mut self) -> Result<()> {
        self.writes_used += 1;
        if self.writes_used > self.quota() {
            return Err(Error::QuotaExceeded {
                machine: self.machine_id,
                kind: "write",
                quota: self.quota(),
            });
        }
        Ok(())
    }

    /// Emits one key-value pair into the next store.
    pub fn emit(&mut self, key: Vec<u8>, value: Vec<u8>) -> Result<()> {
        debug_assert!(
            key.len() + value.len() <= self.max_pair_bytes,
            "key-value pair of {} bytes exceeds the configured bound of {}",
            key.len() + value.len(),
            self.max_pair_bytes
        );
        self.writes_used += 1;
        if self.writes_used > self.quota() {
            return Err(Error::QuotaExceeded {
                machine: self.machine_id,
                kind: "write",
                quota: self.quota(),
            });
        }
        self.emits.push((key, value));
        Ok(())
    }

    pub(crate) fn finish(self) -> MachineOutcome {
        MachineOutcome {
            queries: self.queries_used,
            writes: self.writes_used,
            bytes_kv: self.bytes_kv,
            emits: self.emits,
        }
    }
}

pub(crate) struct MachineOutcome {
    pub queries: u64,
    pub writes: u64,
    pub bytes_kv: u64,
    pub emits: Vec<(Vec<u8>, Vec<u8>)>,
}
