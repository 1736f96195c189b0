//! Maximum s-t flow on directed unit-capacity graphs under edge insertions.
//!
//! * [`network`]: the multigraph, its flow bits and residual orientation.
//! * [`reach`]: incremental single-source reachability with path extraction.
//! * [`static_flow`]: Dinic and Edmonds-Karp on a snapshot.
//! * [`bounded`]: exact incremental max-flow up to a cutoff `mu`.
//! * [`approx`]: the `(1 + eps)`-approximate framework with periodic rebuilds.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod approx;
pub mod bounded;
mod error;
pub mod network;
pub mod reach;
pub mod static_flow;

pub use approx::{stale_threshold, suggested_mu, ApproxMaxFlow, FrameworkStats};
pub use bounded::{BmfCounters, BoundedMaxFlow, EpochRecord, InsertOutcome};
pub use error::{Error, Violation};
pub use network::{
    check_assignment, ArcKind, EdgeId, EdgeRecord, FlowNetwork, ResidualArc, VertexId,
};
pub use reach::{ReachCounters, ReachTree, TreeArc};
pub use static_flow::{dinic_max_flow, edmonds_karp, verify_optimal, FlowResult};
