//! Stream replay, workload generation and verification for `incflow-core`.

pub mod bench;
pub mod report;
pub mod runner;
pub mod stream;
pub mod workload;

pub use report::{StatsDoc, STATS_SCHEMA};
pub use runner::{run, MuChoice, QueryOutput, RunError, RunOptions, RunReport, Strategy};
pub use stream::{format_stream, parse_stream, ParseError, Stream, StreamEvent};
pub use workload::{Arcs, Workload, WorkloadError};
