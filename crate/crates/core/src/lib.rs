//! Deterministic simulator of the adaptive massively parallel computation
//! (AMPC) model together with a library of graph algorithms built on top of
//! it and their classic MPC counterparts.
//!
//! The crate is organized around three layers:
//!
//! - [`runtime`]: machines, synchronous rounds, the per-round distributed
//!   hash tables, communication quotas and metrics accounting.
//! - [`graph`] and [`tree`]: graph representation, generators and the tree
//!   machinery (Euler tours, sparse-table RMQ, heavy-light decomposition,
//!   pivot tables, pointer jumping) shared by the algorithms.
//! - algorithm modules: [`msf`] (minimum spanning forest and connectivity),
//!   [`matching`] (maximal matching and maximal independent set),
//!   [`mpc`] (shuffle-only baselines) and [`twocycle`] (cycle counting).
//!
//! Every algorithm is deterministic in `(graph, seed, machines, space)` and
//! is checked against the sequential reference implementations in
//! [`oracle`].

pub mod error;
pub mod graph;
pub mod hashing;
pub mod matching;
pub mod mpc;
pub mod msf;
pub mod oracle;
pub mod runtime;
pub mod tree;
pub mod twocycle;

pub use error::{Error, Result};
pub use runtime::{RoundKind, Runtime, RuntimeConfig};
