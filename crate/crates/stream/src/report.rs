//! Statistics output for a finished run.
//!
//! The JSON document carries `"schema": "incflow-stats/1"`. Fields are only
//! ever added under that tag; renaming or removing one bumps the version.

use serde::Serialize;

use crate::runner::RunReport;

pub const STATS_SCHEMA: &str = "incflow-stats/1";

#[derive(Debug, Clone, Serialize)]
pub struct StatsDoc {
    pub schema: &'static str,
    pub strategy: &'static str,
    pub n: usize,
    pub source: usize,
    pub target: usize,
    pub epsilon: Option<f64>,
    pub mu: Option<u64>,
    pub inserts: u64,
    pub queries: u64,
    pub forwarded: u64,
    pub stale: u64,
    pub rebuilds: u64,
    pub bmf_queries: u64,
    pub static_arc_scans: u64,
    pub bmf: BmfDoc,
    pub amortized: AmortizedDoc,
    pub bounds: BoundsDoc,
    pub wall_ms: WallDoc,
}

#[derive(Debug, Clone, Serialize)]
pub struct BmfDoc {
    pub accepted: u64,
    pub ignored: u64,
    pub arc_scans: u64,
    pub update_calls: u64,
    pub tree_rebuilds: u64,
    pub augmentations: u64,
    pub epochs: u64,
    pub epochs_over_bound: u64,
}

/// Per-insert averages.
#[derive(Debug, Clone, Serialize)]
pub struct AmortizedDoc {
    pub bmf_arc_scans: f64,
    pub static_arc_scans: f64,
    pub total_arc_scans: f64,
    pub wall_ns: f64,
}

/// Closed-form ceilings the counters are checked against.
#[derive(Debug, Clone, Serialize)]
pub struct BoundsDoc {
    /// `4 * inserts * (mu + 2)`; null without a bounded structure.
    pub bmf_arc_scan_limit: Option<u64>,
    pub bmf_within_limit: Option<bool>,
    /// `stale / (epsilon * mu) + 1`; null outside the approx strategy or when `epsilon * mu = 0`.
    pub rebuild_limit: Option<f64>,
    pub rebuilds_within_limit: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WallDoc {
    pub replay: f64,
    pub verify: f64,
}

impl StatsDoc {
    pub fn from_report(r: &RunReport) -> Self {
        let s = &r.stats;
        let per = |x: f64| {
            if s.inserts == 0 {
                0.0
            } else {
                x / s.inserts as f64
            }
        };
        let bmf_limit = match (r.strategy, r.mu) {
            ("naive-static", _) | (_, None) => None,
            (_, Some(mu)) => Some(4 * s.inserts * (mu + 2)),
        };
        let rebuild_limit = match (r.eps, r.mu) {
            (Some(eps), Some(mu)) if eps * mu as f64 > 0.0 => {
                Some(s.stale as f64 / (eps * mu as f64) + 1.0)
            }
            _ => None,
        };
        StatsDoc {
            schema: STATS_SCHEMA,
            strategy: r.strategy,
            n: r.n,
            source: r.source,
            target: r.target,
            epsilon: r.eps,
            mu: r.mu,
            inserts: s.inserts,
            queries: r.outputs.len() as u64,
            forwarded: s.forwarded,
            stale: s.stale,
            rebuilds: s.rebuilds,
            bmf_queries: s.bmf_queries,
            static_arc_scans: s.static_arc_scans,
            bmf: BmfDoc {
                accepted: s.bmf.accepted,
                ignored: s.bmf.ignored,
                arc_scans: s.bmf.arc_scans,
                update_calls: s.bmf.update_calls,
                tree_rebuilds: s.bmf.tree_rebuilds,
                augmentations: s.bmf.augmentations,
                epochs: r.epochs.epochs,
                epochs_over_bound: r.epochs.over_bound,
            },
            amortized: AmortizedDoc {
                bmf_arc_scans: per(s.bmf.arc_scans as f64),
                static_arc_scans: per(s.static_arc_scans as f64),
                total_arc_scans: per((s.bmf.arc_scans + s.static_arc_scans) as f64),
                wall_ns: per(r.timings.replay.as_nanos() as f64),
            },
            bounds: BoundsDoc {
                bmf_arc_scan_limit: bmf_limit,
                bmf_within_limit: bmf_limit.map(|l| s.bmf.arc_scans <= l),
                rebuild_limit,
                rebuilds_within_limit: rebuild_limit.map(|l| s.rebuilds as f64 <= l),
            },
            wall_ms: WallDoc {
                replay: r.timings.replay.as_secs_f64() * 1e3,
                verify: r.timings.verify.as_secs_f64() * 1e3,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("stats serialize")
    }

    pub fn to_text(&self) -> String {
        let opt = |x: Option<u64>| x.map_or_else(|| "-".to_owned(), |v| v.to_string());
        let mut lines = vec![
            format!("strategy        {}", self.strategy),
            format!("n s t           {} {} {}", self.n, self.source, self.target),
            format!(
                "epsilon mu      {} {}",
                self.epsilon
                    .map_or_else(|| "-".to_owned(), |e| e.to_string()),
                opt(self.mu)
            ),
            format!("inserts         {}", self.inserts),
            format!("queries         {}", self.queries),
            format!("forwarded       {}", self.forwarded),
            format!("stale           {}", self.stale),
            format!("rebuilds        {}", self.rebuilds),
            format!("bmf arc scans   {}", self.bmf.arc_scans),
            format!("bmf rounds      {}", self.bmf.epochs),
            format!("static scans    {}", self.static_arc_scans),
            format!(
                "per insert      bmf {:.3} static {:.3} total {:.3} scans, {:.1} ns",
                self.amortized.bmf_arc_scans,
                self.amortized.static_arc_scans,
                self.amortized.total_arc_scans,
                self.amortized.wall_ns
            ),
        ];
        if let (Some(limit), Some(ok)) =
            (self.bounds.bmf_arc_scan_limit, self.bounds.bmf_within_limit)
        {
            lines.push(format!("bmf scan limit  {limit} ({})", verdict(ok)));
        }
        if let (Some(limit), Some(ok)) =
            (self.bounds.rebuild_limit, self.bounds.rebuilds_within_limit)
        {
            lines.push(format!("rebuild limit   {limit:.3} ({})", verdict(ok)));
        }
        lines.push(format!(
            "wall ms         replay {:.3} verify {:.3}",
            self.wall_ms.replay, self.wall_ms.verify
        ));
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "EXCEEDED"
    }
}
