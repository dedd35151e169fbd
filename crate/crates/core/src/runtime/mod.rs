//! Simulator of the adaptive massively parallel computation model.
//!
//! An execution proceeds in synchronous rounds. In each round every machine
//! receives its share of the round's work items (the analogue of a
//! distributed collection partition), may issue up to `O(S)` lookups against
//! the frozen store written by earlier rounds, and may emit up to `O(S)`
//! key-value writes that become visible only after the round barrier. Rounds
//! whose writes are grouped by key are shuffles, the unit of cost that the
//! baselines are compared on.

mod codec;
mod machine;
mod metrics;
mod store;

pub use codec::{get_u32, get_u64, put_u32, put_u64, rank_pair, u32s};
pub use machine::MachineContext;
pub use metrics::RunMetrics;
pub use store::{DhtStore, TableId};

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hashing;

use machine::MachineOutcome;

/// Whether a round's writes are grouped by key at the barrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoundKind {
    Map,
    Shuffle,
}

/// Typed output collection of one machine within a round.
pub struct OutputSink<O> {
    items: Vec<O>,
}

impl<O> OutputSink<O> {
    pub fn push(&mut self, ctx: &mut MachineContext, item: O) -> Result<()> {
        ctx.count_output()?;
        self.items.push(item);
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RuntimeConfig {
    /// Number of machines `P`.
    pub machines: u32,
    /// Per-machine space quota `S`, in key-value operations per round.
    pub space: u64,
    /// Constant absorbed into the `O(S)` communication bound; a machine may
    /// perform up to `quota_slack * space` queries and as many writes.
    pub quota_slack: u64,
    /// Global seed for ranks, assignment and sampling.
    pub seed: u64,
    /// Per-machine caching of lookup results.
    pub caching: bool,
    /// Execute the machines of a round on threads. Results are identical to
    /// the sequential schedule.
    pub parallel: bool,
    /// Residual problem size (in edges) below which a stage finishes on a
    /// single machine.
    pub finish_threshold: usize,
    /// Upper bound on the serialized size of one key-value pair.
    pub max_pair_bytes: usize,
}

impl Default for RuntimeConfig {
    fn default() -> Self {
        RuntimeConfig {
            machines: 4,
            space: 1 << 20,
            quota_slack: 8,
            seed: 0,
            caching: true,
            parallel: false,
            finish_threshold: 50_000,
            max_pair_bytes: 64,
        }
    }
}

impl RuntimeConfig {
    /// Configuration sized for a graph with `n` vertices and `m` edges:
    /// `S = max(2, ceil(n^eps))` and enough machines that the expected load
    /// per machine stays around `S` even for query-heavy stages, whose total
    /// communication is of order `m + n log n`.
    pub fn for_graph(n: usize, m: usize, eps: f64, seed: u64) -> Self {
        let space = space_for(n, eps);
        let log_n = (usize::BITS - n.max(2).leading_zeros()) as usize;
        let total = m + n * (log_n + 1);
        let machines = (total as u64).div_ceil(space).max(1) as u32;
        RuntimeConfig {
            machines,
            space,
            seed,
            ..RuntimeConfig::default()
        }
    }
}

/// `S = max(2, ceil(n^eps))`.
pub fn space_for(n: usize, eps: f64) -> u64 {
    ((n.max(1) as f64).powf(eps).ceil() as u64).max(2)
}

/// Per-item budget `ceil(n^eps)` for truncated query processes.
pub fn budget_for(n: usize, eps: f64) -> u64 {
    ((n.max(1) as f64).powf(eps).ceil() as u64).max(1)
}

/// The simulator: one store, one metrics ledger, a monotone round counter.
pub struct Runtime {
    cfg: RuntimeConfig,
    store: DhtStore,
    metrics: RunMetrics,
    tally: Arc<AtomicU64>,
    next_table: u16,
}

impl Runtime {
    pub fn new(cfg: RuntimeConfig) -> Self {
        assert!(cfg.machines >= 1, "need at least one machine");
        assert!(cfg.space >= 2, "space quota must be at least 2");
        Runtime {
            cfg,
            store: DhtStore::new(),
            metrics: RunMetrics::default(),
            tally: Arc::new(AtomicU64::new(0)),
            next_table: 0,
        }
    }

    pub fn config(&self) -> &RuntimeConfig {
        &self.cfg
    }

    pub fn metrics(&self) -> &RunMetrics {
        &self.metrics
    }

    pub fn store(&self) -> &DhtStore {
        &self.store
    }

    /// Independently maintained count of all lookups ever answered; must
    /// equal `metrics().total_queries` at every barrier.
    pub fn query_tally(&self) -> u64 {
        self.tally.load(Ordering::Relaxed)
    }

    /// Index of the last completed round.
    pub fn round_index(&self) -> u32 {
        self.store.round_index()
    }

    /// Hands out a fresh logical table (a distinct key prefix).
    pub fn table(&mut self) -> TableId {
        let id = TableId(self.next_table);
        self.next_table = self
            .next_table
            .checked_add(1)
            .expect("table ids exhausted");
        id
    }

    /// Stores input data in the initial store. Not metered: the model starts
    /// with the input already resident under well-known keys.
    pub fn seed_input(&mut self, pairs: impl IntoIterator<Item = (Vec<u8>, Vec<u8>)>) {
        self.store.seed(pairs);
    }

    /// Drops a table's content, e.g. scratch data of a finished stage.
    pub fn clear_table(&mut self, table: TableId) {
        self.store.clear(table);
    }

    /// The machine a work item is routed to in the upcoming round.
    fn machine_for(&self, round: u32, item_key: u64) -> u32 {
        (hashing::hash3(self.cfg.seed, hashing::tag::ASSIGN, round as u64, item_key)
            % self.cfg.machines as u64) as u32
    }

    /// Executes one synchronous round.
    ///
    /// `items` are distributed over machines by a salted hash of
    /// `item_key(item)`; `body` runs once per machine that received at least
    /// one item (idle machines are skipped, they cannot communicate). All
    /// lookups observe the store as of the previous barrier.
    pub fn round<I, F>(
        &mut self,
        kind: RoundKind,
        items: &[I],
        item_key: impl Fn(&I) -> u64,
        body: F,
    ) -> Result<()>
    where
        I: Clone + Sync + Send,
        F: Fn(&mut MachineContext, &[I], &DhtStore) -> Result<()> + Sync,
    {
        let round = self.store.round_index() + 1;
        let p = self.cfg.machines as usize;
        let mut groups: Vec<Vec<I>> = vec![Vec::new(); p];
        for item in items {
            let m = self.machine_for(round, item_key(item)) as usize;
            groups[m].push(item.clone());
        }

        let run_machine = |machine_id: u32, group: &[I]| -> Result<MachineOutcome> {
            let mut ctx = MachineContext::new(
                machine_id,
                self.cfg.space,
                self.cfg.quota_slack,
                self.cfg.caching,
                self.cfg.max_pair_bytes,
                self.cfg.seed,
                round,
                Arc::clone(&self.tally),
            );
            body(&mut ctx, group, &self.store)?;
            Ok(ctx.finish())
        };

        let results: Vec<Result<MachineOutcome>> = if self.cfg.parallel {
            self.run_parallel(&groups, &run_machine)
        } else {
            groups
                .iter()
                .enumerate()
                .map(|(m, g)| {
                    if g.is_empty() {
                        Ok(MachineOutcome { queries: 0, writes: 0, bytes_kv: 0, emits: Vec::new() })
                    } else {
                        run_machine(m as u32, g)
                    }
                })
                .collect()
        };

        let mut writes: Vec<Vec<(Vec<u8>, Vec<u8>)>> = Vec::with_capacity(p);
        let mut shuffled_bytes = 0u64;
        for outcome in results {
            let outcome = outcome?;
            self.metrics.total_queries += outcome.queries;
            self.metrics.total_writes += outcome.writes;
            self.metrics.bytes_kv += outcome.bytes_kv;
            self.metrics.max_machine_comm = self
                .metrics
                .max_machine_comm
                .max(outcome.queries + outcome.writes);
            if kind == RoundKind::Shuffle {
                shuffled_bytes += outcome
                    .emits
                    .iter()
                    .map(|(k, v)| (k.len() + v.len()) as u64)
                    .sum::<u64>();
            }
            writes.push(outcome.emits);
        }

        self.metrics.rounds += 1;
        if kind == RoundKind::Shuffle {
            self.metrics.shuffles += 1;
            self.metrics.bytes_shuffled += shuffled_bytes;
        }
        self.store.merge_round(round, writes, kind == RoundKind::Shuffle);
        log::debug!(
            "round {round} done: {} queries total, {} keys stored",
            self.metrics.total_queries,
            self.store.num_keys()
        );
        Ok(())
    }

    /// Like [`Runtime::round`], but the machines additionally produce typed
    /// output items that flow back to the driver (the analogue of a map
    /// stage's output collection). Each pushed item counts as a write.
    /// Outputs are concatenated in machine order.
    pub fn round_out<I, O, F>(
        &mut self,
        kind: RoundKind,
        items: &[I],
        item_key: impl Fn(&I) -> u64,
        body: F,
    ) -> Result<Vec<O>>
    where
        I: Clone + Sync + Send,
        O: Send,
        F: Fn(&mut MachineContext, &[I], &DhtStore, &mut OutputSink<O>) -> Result<()> + Sync,
    {
        let collected = std::sync::Mutex::new(Vec::new());
        self.round(kind, items, item_key, |ctx, mine, store| {
            let mut sink = OutputSink { items: Vec::new() };
            body(ctx, mine, store, &mut sink)?;
            collected.lock().unwrap().push((ctx.machine_id, sink.items));
            Ok(())
        })?;
        let mut per_machine = collected.into_inner().unwrap();
        per_machine.sort_by_key(|&(m, _)| m);
        Ok(per_machine.into_iter().flat_map(|(_, v)| v).collect())
    }

    fn run_parallel<I, G>(&self, groups: &[Vec<I>], run_machine: &G) -> Vec<Result<MachineOutcome>>
    where
        I: Sync,
        G: Fn(u32, &[I]) -> Result<MachineOutcome> + Sync,
    {
        let threads = std::thread::available_parallelism()
            .map(|t| t.get())
            .unwrap_or(1)
            .min(groups.len().max(1));
        let chunk = groups.len().div_ceil(threads);
        let mut results: Vec<Result<MachineOutcome>> = Vec::with_capacity(groups.len());
        std::thread::scope(|scope| {
            let handles: Vec<_> = groups
                .chunks(chunk)
                .enumerate()
                .map(|(c, part)| {
                    scope.spawn(move || {
                        part.iter()
                            .enumerate()
                            .map(|(i, g)| {
                                let machine_id = (c * chunk + i) as u32;
                                if g.is_empty() {
                                    Ok(MachineOutcome {
                                        queries: 0,
                                        writes: 0,
                                        bytes_kv: 0,
                                        emits: Vec::new(),
                                    })
                                } else {
                                    run_machine(machine_id, g)
                                }
                            })
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                results.extend(h.join().expect("machine thread panicked"));
            }
        });
        results
    }

    /// Groups emitted key-value pairs by key: the standalone shuffle used by
    /// the MPC-style baselines, which keep their collections outside the
    /// store and never perform lookups.
    ///
    /// Counts one round and one shuffle; the write load is attributed to
    /// machines by key so quota violations still surface.
    pub fn shuffle_pairs(
        &mut self,
        pairs: Vec<(Vec<u8>, Vec<u8>)>,
    ) -> Result<BTreeMap<Vec<u8>, Vec<Vec<u8>>>> {
        let round = self.store.round_index() + 1;
        let p = self.cfg.machines as usize;
        let quota = self.cfg.quota_slack.saturating_mul(self.cfg.space);
        let mut per_machine = vec![0u64; p];
        let mut grouped: BTreeMap<Vec<u8>, Vec<Vec<u8>>> = BTreeMap::new();
        let mut bytes = 0u64;
        for (k, v) in pairs {
            let m = (hashing::hash3(
                self.cfg.seed,
                hashing::tag::ASSIGN,
                round as u64,
                hashing::mix64(k.iter().fold(0u64, |acc, &b| acc.rotate_left(8) ^ b as u64)),
            ) % p as u64) as usize;
            per_machine[m] += 1;
            if per_machine[m] > quota {
                return Err(Error::QuotaExceeded {
                    machine: m as u32,
                    kind: "write",
                    quota,
                });
            }
            bytes += (k.len() + v.len()) as u64;
            self.metrics.total_writes += 1;
            grouped.entry(k).or_default().push(v);
        }
        for vs in grouped.values_mut() {
            vs.sort();
        }
        self.metrics.rounds += 1;
        self.metrics.shuffles += 1;
        self.metrics.bytes_shuffled += bytes;
        self.metrics.max_machine_comm = self
            .metrics
            .max_machine_comm
            .max(per_machine.iter().copied().max().unwrap_or(0));
        self.store.merge_round(round, Vec::new(), true);
        Ok(grouped)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_runtime() -> Runtime {
        Runtime::new(RuntimeConfig {
            machines: 2,
            space: 16,
            quota_slack: 1,
            seed: 7,
            ..RuntimeConfig::default()
        })
    }

    #[test]
    fn reads_observe_only_previous_rounds() {
        let mut rt = small_runtime();
        let t = rt.table();
        // Machine writes (k, v) in round 1, then queries k in the same round:
        // the lookup must miss because the store only holds round-0 data.
        rt.round(RoundKind::Map, &[1u32], |&x| x as u64, |ctx, items, store| {
            for &it in items {
                ctx.emit(t.key1(it), vec![42])?;
                let got = ctx.lookup(store, &t.key1(it))?;
                assert!(got.is_empty(), "fresh write must not be visible");
            }
            Ok(())
        })
        .unwrap();
        // Next round sees it.
        rt.round(RoundKind::Map, &[1u32], |&x| x as u64, |ctx, items, store| {
            for &it in items {
                let got = ctx.lookup(store, &t.key1(it))?;
                assert_eq!(got, vec![vec![42u8]]);
            }
            Ok(())
        })
        .unwrap();
        assert_eq!(rt.metrics().rounds, 2);
    }

    #[test]
    fn quota_boundary_is_enforced() {
        // S=16, slack=1: 16 distinct queries fine, the 17th errors.
        let mut rt = small_runtime();
        let t = rt.table();
        let err = rt.round(RoundKind::Map, &[0u32], |&x| x as u64, |ctx, _, store| {
            for i in 0..17u32 {
                ctx.lookup(store, &t.key1(i))?;
            }
            Ok(())
        });
        assert!(matches!(err, Err(Error::QuotaExceeded { kind: "query", .. })));

        let mut rt2 = small_runtime();
        let t2 = rt2.table();
        rt2.round(RoundKind::Map, &[0u32], |&x| x as u64, |ctx, _, store| {
            for i in 0..16u32 {
                ctx.lookup(store, &t2.key1(i))?;
            }
            Ok(())
        })
        .unwrap();
        assert_eq!(rt2.metrics().total_queries, 16);
    }

    #[test]
    fn counter_arithmetic_across_machines() {
        // Two machines issue 3 and 5 queries: totals add up, max is >= 5.
        let mut rt = Runtime::new(RuntimeConfig {
            machines: 2,
            space: 16,
            quota_slack: 8,
            seed: 1,
            ..RuntimeConfig::default()
        });
        let t = rt.table();
        // Find one item per machine.
        let mut item_for = [None::<u32>; 2];
        for x in 0..100u32 {
            let m = rt.machine_for(1, x as u64) as usize;
            if item_for[m].is_none() {
                item_for[m] = Some(x);
            }
        }
        let items = [item_for[0].unwrap(), item_for[1].unwrap()];
        rt.round(RoundKind::Map, &items, |&x| x as u64, |ctx, _, store| {
            let k = if ctx.machine_id == 0 { 3 } else { 5 };
            for i in 0..k {
                ctx.lookup(store, &t.key1(i))?;
            }
            Ok(())
        })
        .unwrap();
        assert_eq!(rt.metrics().total_queries, 8);
        assert!(rt.metrics().max_machine_comm >= 5);
        assert_eq!(rt.query_tally(), rt.metrics().total_queries);
    }

    #[test]
    fn cache_hits_do_not_count() {
        let mut rt = small_runtime();
        let t = rt.table();
        rt.seed_input(vec![(t.key1(9), vec![1, 2, 3])]);
        rt.round(RoundKind::Map, &[0u32], |&x| x as u64, |ctx, _, store| {
            let a = ctx.lookup(store, &t.key1(9))?;
            let b = ctx.lookup(store, &t.key1(9))?;
            assert_eq!(a, b);
            assert_eq!(ctx.queries_used(), 1);
            Ok(())
        })
        .unwrap();
        assert_eq!(rt.metrics().total_queries, 1);

        // With caching disabled the repeat costs again.
        let mut rt2 = Runtime::new(RuntimeConfig {
            caching: false,
            ..small_runtime().cfg
        });
        let t2 = rt2.table();
        rt2.seed_input(vec![(t2.key1(9), vec![1, 2, 3])]);
        rt2.round(RoundKind::Map, &[0u32], |&x| x as u64, |ctx, _, store| {
            for _ in 0..3 {
                ctx.lookup(store, &t2.key1(9))?;
            }
            assert_eq!(ctx.queries_used(), 3);
            Ok(())
        })
        .unwrap();
    }

    #[test]
    fn shuffle_groups_and_counts() {
        let mut rt = small_runtime();
        let grouped = rt
            .shuffle_pairs(vec![
                (b"a".to_vec(), vec![1]),
                (b"b".to_vec(), vec![2]),
                (b"a".to_vec(), vec![3]),
            ])
            .unwrap();
        assert_eq!(grouped[&b"a".to_vec()], vec![vec![1u8], vec![3u8]]);
        assert_eq!(grouped[&b"b".to_vec()], vec![vec![2u8]]);
        assert_eq!(rt.metrics().shuffles, 1);
        assert_eq!(rt.metrics().bytes_shuffled, 6);

        let empty = rt.shuffle_pairs(Vec::new()).unwrap();
        assert!(empty.is_empty());
        assert_eq!(rt.metrics().shuffles, 2);
    }

    #[test]
    fn parallel_matches_sequential() {
        let items: Vec<u32> = (0..200).collect();
        let run = |parallel: bool| -> (RunMetrics, Vec<(Vec<u8>, Vec<Vec<u8>>)>) {
            let mut rt = Runtime::new(RuntimeConfig {
                machines: 7,
                space: 64,
                seed: 3,
                parallel,
                ..RuntimeConfig::default()
            });
            let t = rt.table();
            let out = rt.table();
            rt.seed_input(items.iter().map(|&i| (t.key1(i), u32s(&[i * 2]))));
            rt.round(RoundKind::Shuffle, &items, |&x| x as u64, |ctx, mine, store| {
                for &i in mine {
                    let v = ctx.lookup(store, &t.key1(i))?;
                    let doubled = get_u32(&v[0], 0);
                    ctx.emit(out.key1(doubled % 10), u32s(&[i]))?;
                }
                Ok(())
            })
            .unwrap();
            (rt.metrics().clone(), rt.store().scan(out))
        };
        let (m_seq, s_seq) = run(false);
        let (m_par, s_par) = run(true);
        assert_eq!(m_seq, m_par);
        assert_eq!(s_seq, s_par);
    }
}
