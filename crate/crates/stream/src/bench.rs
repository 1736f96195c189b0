//! Amortized per-insert cost at growing sizes.

use std::time::{Duration, Instant};

use incflow_core::{suggested_mu, ApproxMaxFlow, VertexId};
use serde::Serialize;

use crate::workload::Workload;

/// Edges per path in the parallel-paths benchmark.
pub const PATH_LEN: usize = 4;
/// Layer width of the layered benchmark; also its max-flow value.
pub const LAYER_WIDTH: usize = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchWorkload {
    /// `layered(1000, 2)` padded to `m` edges: `n = 2002` at every size.
    Layered,
    /// `parallel-paths(m / 4, 4)`: `n` grows with `m`.
    ParallelPaths,
}

impl BenchWorkload {
    pub fn at(self, m: usize) -> Workload {
        match self {
            BenchWorkload::Layered => Workload::Layered {
                width: LAYER_WIDTH,
                depth: 2,
                edges: Some(m.max(3 * LAYER_WIDTH)),
            },
            BenchWorkload::ParallelPaths => Workload::ParallelPaths {
                k: (m / PATH_LEN).max(1),
                len: PATH_LEN,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub inserts: usize,
    pub n: usize,
    pub epsilon: f64,
    pub mu: u64,
    pub final_estimate: u64,
    pub rebuilds: u64,
    pub bmf_arc_scans: u64,
    pub static_arc_scans: u64,
    pub wall_ms: f64,
    pub ns_per_insert: f64,
    /// `ns_per_insert` over the previous row's; absent on the first row.
    pub growth: Option<f64>,
}

/// Replays `workload` at every size in `sizes` through the approximate
/// structure with `mu = suggested_mu(m, eps)`. Both workloads end with a max
/// flow above `mu`, so the bounded phase and the rebuild phase both
/// contribute.
pub fn scaling(
    workload: BenchWorkload,
    sizes: &[usize],
    eps: f64,
    seed: u64,
) -> anyhow::Result<Vec<BenchRow>> {
    let mut rows: Vec<BenchRow> = Vec::with_capacity(sizes.len());
    for &m in sizes {
        let (n, s, t, arcs) = workload.at(m).arcs(seed)?;
        let mu = suggested_mu(arcs.len() as u64, eps)?.min(n as u64);
        let mut a = ApproxMaxFlow::new(n, VertexId(s), VertexId(t), eps, mu)?;
        let started = Instant::now();
        for &(u, v) in &arcs {
            a.insert(VertexId(u), VertexId(v))?;
        }
        let wall: Duration = started.elapsed();
        let stats = a.stats();
        let ns_per_insert = wall.as_nanos() as f64 / arcs.len() as f64;
        let growth = rows.last().map(|prev| ns_per_insert / prev.ns_per_insert);
        rows.push(BenchRow {
            inserts: arcs.len(),
            n,
            epsilon: eps,
            mu,
            final_estimate: a.value(),
            rebuilds: stats.rebuilds,
            bmf_arc_scans: stats.bmf.arc_scans,
            static_arc_scans: stats.static_arc_scans,
            wall_ms: wall.as_secs_f64() * 1e3,
            ns_per_insert,
            growth,
        });
    }
    Ok(rows)
}

pub fn render_text(rows: &[BenchRow]) -> String {
    let mut out = String::from(
        "inserts        n     mu  rebuilds   bmf_scans  static_scans   ns/insert  growth\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{:>7} {:>8} {:>6} {:>9} {:>11} {:>13} {:>11.1}  {}\n",
            r.inserts,
            r.n,
            r.mu,
            r.rebuilds,
            r.bmf_arc_scans,
            r.static_arc_scans,
            r.ns_per_insert,
            r.growth
                .map_or_else(|| "-".to_owned(), |g| format!("{g:.2}x")),
        ));
    }
    out
}
