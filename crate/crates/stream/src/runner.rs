//! Replays a parsed stream through one of the maintenance strategies.

use std::time::{Duration, Instant};

use incflow_core::{
    dinic_max_flow, edmonds_karp, suggested_mu, ApproxMaxFlow, BoundedMaxFlow, EpochRecord,
    FlowNetwork, FrameworkStats, VertexId,
};
use thiserror::Error;

use crate::stream::{Stream, StreamEvent};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MuChoice {
    /// Derived from the stream's insert count (approx) or the vertex count
    /// (exact-bmf). Needs the whole stream up front.
    Auto,
    Fixed(u64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Strategy {
    Approx {
        eps: f64,
        mu: MuChoice,
    },
    ExactBmf {
        mu: MuChoice,
    },
    /// Dinic from scratch at every query.
    NaiveStatic,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Approx { .. } => "approx",
            Strategy::ExactBmf { .. } => "exact-bmf",
            Strategy::NaiveStatic => "naive-static",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Check every query against Edmonds-Karp on the current graph.
    pub verify: bool,
    /// The stream arrives over a pipe; its length is not known in advance.
    pub live: bool,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Core(#[from] incflow_core::Error),
    #[error("--mu auto needs the total insert count; pass an explicit --mu when reading a pipe")]
    AutoMuNeedsFile,
    #[error("verification failed at event {event}: reported {value}, exact {exact}")]
    Verification {
        event: usize,
        value: u64,
        exact: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryOutput {
    pub value: u64,
    pub exact: Option<u64>,
}

impl QueryOutput {
    /// `exact / value`; 1 when both are zero.
    pub fn ratio(&self) -> Option<f64> {
        let exact = self.exact?;
        Some(match (self.value, exact) {
            (0, 0) => 1.0,
            (0, _) => f64::INFINITY,
            (v, e) => e as f64 / v as f64,
        })
    }

    pub fn line(&self) -> String {
        match (self.exact, self.ratio()) {
            (Some(exact), Some(r)) => format!("{} {} {:.6}", self.value, exact, r),
            _ => self.value.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Timings {
    pub replay: Duration,
    pub verify: Duration,
}

/// Per-round reach tree accounting of the bounded structure.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EpochSummary {
    pub epochs: u64,
    /// Rounds whose tree work exceeded `2 * inserted + initial` arcs.
    pub over_bound: u64,
}

impl EpochSummary {
    fn of(records: &[EpochRecord]) -> Self {
        EpochSummary {
            epochs: records.len() as u64,
            over_bound: records
                .iter()
                .filter(|e| e.update_calls > 2 * e.inserted_arcs + e.initial_arcs)
                .count() as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub strategy: &'static str,
    pub n: usize,
    pub source: usize,
    pub target: usize,
    pub eps: Option<f64>,
    pub mu: Option<u64>,
    pub outputs: Vec<QueryOutput>,
    pub stats: FrameworkStats,
    pub epochs: EpochSummary,
    pub timings: Timings,
}

impl RunReport {
    pub fn query_lines(&self) -> String {
        let mut out = String::new();
        for q in &self.outputs {
            out.push_str(&q.line());
            out.push('\n');
        }
        out
    }
}

enum Engine {
    Approx(Box<ApproxMaxFlow>),
    Bmf(Box<BoundedMaxFlow>),
    Naive {
        net: FlowNetwork,
        solves: u64,
        scans: u64,
    },
}

pub fn run(stream: &Stream, strategy: Strategy, opts: RunOptions) -> Result<RunReport, RunError> {
    let n = stream.n;
    let (s, t) = (VertexId(stream.source), VertexId(stream.target));
    let inserts = stream.insert_count() as u64;
    if opts.live
        && matches!(
            strategy,
            Strategy::Approx {
                mu: MuChoice::Auto,
                ..
            }
        )
    {
        return Err(RunError::AutoMuNeedsFile);
    }

    let (mut engine, eps, mu) = match strategy {
        Strategy::Approx { eps, mu } => {
            let mu = match mu {
                MuChoice::Fixed(mu) => mu,
                MuChoice::Auto => suggested_mu(inserts.max(1), eps)?.min(n as u64),
            };
            (
                Engine::Approx(Box::new(ApproxMaxFlow::new(n, s, t, eps, mu)?)),
                Some(eps),
                Some(mu),
            )
        }
        Strategy::ExactBmf { mu } => {
            let mu = match mu {
                MuChoice::Fixed(mu) => mu,
                MuChoice::Auto => n as u64,
            };
            (
                Engine::Bmf(Box::new(BoundedMaxFlow::new(n, s, t, mu)?)),
                None,
                Some(mu),
            )
        }
        Strategy::NaiveStatic => (
            Engine::Naive {
                net: FlowNetwork::new(n, s, t)?,
                solves: 0,
                scans: 0,
            },
            None,
            None,
        ),
    };

    // Full graph for the oracle; the bounded structure drops edges once saturated.
    let mut full = if opts.verify {
        Some(FlowNetwork::new(n, s, t)?)
    } else {
        None
    };
    let mut outputs = Vec::with_capacity(stream.query_count());
    let mut timings = Timings::default();

    for (index, event) in stream.events.iter().enumerate() {
        match *event {
            StreamEvent::Insert(u, v) => {
                let (u, v) = (VertexId(u), VertexId(v));
                let started = Instant::now();
                match &mut engine {
                    Engine::Approx(a) => a.insert(u, v)?,
                    Engine::Bmf(b) => {
                        b.insert(u, v)?;
                    }
                    Engine::Naive { net, .. } => {
                        net.insert_edge(u, v)?;
                    }
                }
                timings.replay += started.elapsed();
                if let Some(full) = &mut full {
                    full.insert_edge(u, v)?;
                }
            }
            StreamEvent::Query => {
                let started = Instant::now();
                let value = match &mut engine {
                    Engine::Approx(a) => a.value(),
                    Engine::Bmf(b) => b.value(),
                    Engine::Naive { net, solves, scans } => {
                        let r = dinic_max_flow(net);
                        *solves += 1;
                        *scans += r.arc_scans;
                        r.value
                    }
                };
                timings.replay += started.elapsed();
                let exact = match &full {
                    Some(full) => {
                        let started = Instant::now();
                        let exact = edmonds_karp(full).value;
                        timings.verify += started.elapsed();
                        if !accepts(strategy, eps, mu, value, exact) {
                            return Err(RunError::Verification {
                                event: index,
                                value,
                                exact,
                            });
                        }
                        Some(exact)
                    }
                    None => None,
                };
                outputs.push(QueryOutput { value, exact });
            }
        }
    }

    let (stats, epochs) = match &engine {
        Engine::Approx(a) => (a.stats(), EpochSummary::of(&a.bounded().epochs())),
        Engine::Bmf(b) => {
            let c = b.counters();
            let stats = FrameworkStats {
                inserts,
                forwarded: inserts,
                bmf_queries: stream.query_count() as u64,
                bmf: c,
                ..FrameworkStats::default()
            };
            (stats, EpochSummary::of(&b.epochs()))
        }
        Engine::Naive { solves, scans, .. } => (
            FrameworkStats {
                inserts,
                forwarded: inserts,
                rebuilds: *solves,
                static_arc_scans: *scans,
                ..FrameworkStats::default()
            },
            EpochSummary::default(),
        ),
    };

    Ok(RunReport {
        strategy: strategy.name(),
        n,
        source: stream.source,
        target: stream.target,
        eps,
        mu,
        outputs,
        stats,
        epochs,
        timings,
    })
}

fn accepts(strategy: Strategy, eps: Option<f64>, mu: Option<u64>, value: u64, exact: u64) -> bool {
    match strategy {
        Strategy::Approx { .. } => {
            let eps = eps.expect("approx has eps");
            value <= exact && (exact - value) as f64 <= eps * value as f64 + 1e-9
        }
        Strategy::ExactBmf { .. } => {
            let mu = mu.expect("exact-bmf has mu");
            if value <= mu {
                value == exact
            } else {
                value == mu + 1 && exact > mu
            }
        }
        Strategy::NaiveStatic => value == exact,
    }
}
