//! `(1 + eps)`-approximate incremental max-flow.
//!
//! Small flows are maintained exactly by a [`BoundedMaxFlow`] with cutoff
//! `mu + 1`. Once its value passes `mu`, insertions are only counted; every
//! `ceil(eps * mu)` of them trigger an exact static recomputation. The max
//! flow grows by at most one per insertion, so between recomputations the
//! estimate `F` stays within a factor `1 + eps` of the true value `F*`.

use alloc::vec::Vec;

use crate::bounded::{BmfCounters, BoundedMaxFlow};
use crate::error::Error;
use crate::network::{FlowNetwork, VertexId};
use crate::static_flow::dinic_max_flow;

/// Counters certifying the amortized accounting of the framework.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FrameworkStats {
    pub inserts: u64,
    /// Insertions passed on to the bounded structure.
    pub forwarded: u64,
    /// Insertions that arrived while the flow exceeded `mu`.
    pub stale: u64,
    pub rebuilds: u64,
    /// Arc scans spent inside the static solver, summed over rebuilds.
    pub static_arc_scans: u64,
    /// Value queries made to the bounded structure (one per insertion).
    pub bmf_queries: u64,
    pub bmf: BmfCounters,
}

#[derive(Debug, Clone)]
pub struct ApproxMaxFlow {
    net: FlowNetwork,
    bmf: BoundedMaxFlow,
    estimate: u64,
    stale_count: u64,
    eps: f64,
    mu: u64,
    threshold: u64,
    last_rebuild: Option<Vec<bool>>,
    stats: FrameworkStats,
}

impl ApproxMaxFlow {
    pub fn new(
        n: usize,
        source: VertexId,
        target: VertexId,
        eps: f64,
        mu: u64,
    ) -> Result<Self, Error> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidEpsilon(eps));
        }
        if mu > n as u64 {
            return Err(Error::MuOutOfRange { mu, n });
        }
        let net = FlowNetwork::new(n, source, target)?;
        let bmf = BoundedMaxFlow::new(n, source, target, mu + 1)?;
        Ok(ApproxMaxFlow {
            net,
            bmf,
            estimate: 0,
            stale_count: 0,
            eps,
            mu,
            threshold: stale_threshold(eps, mu),
            last_rebuild: None,
            stats: FrameworkStats::default(),
        })
    }

    /// The maintained estimate `F`, with `F <= F* <= (1 + eps) F`.
    #[inline]
    pub fn value(&self) -> u64 {
        self.estimate
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn mu(&self) -> u64 {
        self.mu
    }

    /// Stale insertions that trigger a rebuild, the least integer `>= eps * mu`.
    pub fn rebuild_threshold(&self) -> u64 {
        self.threshold
    }

    /// Stale insertions since the last rebuild.
    pub fn stale_since_rebuild(&self) -> u64 {
        self.stale_count
    }

    pub fn rebuild_count(&self) -> u64 {
        self.stats.rebuilds
    }

    /// The full graph of every insertion. Its own flow bits are unused.
    pub fn network(&self) -> &FlowNetwork {
        &self.net
    }

    pub fn bounded(&self) -> &BoundedMaxFlow {
        &self.bmf
    }

    pub fn stats(&self) -> FrameworkStats {
        FrameworkStats {
            bmf: self.bmf.counters(),
            ..self.stats
        }
    }

    pub fn insert(&mut self, u: VertexId, v: VertexId) -> Result<(), Error> {
        self.net.insert_edge(u, v)?;
        self.stats.inserts += 1;
        self.stats.bmf_queries += 1;
        if self.bmf.value() <= self.mu {
            self.bmf.insert(u, v)?;
            self.stats.forwarded += 1;
            self.estimate = self.bmf.value();
            return Ok(());
        }
        self.stats.stale += 1;
        self.stale_count += 1;
        if self.stale_count >= self.threshold {
            let result = dinic_max_flow(&self.net);
            debug_assert!(result.value >= self.estimate);
            self.estimate = result.value;
            self.stats.static_arc_scans += result.arc_scans;
            self.stats.rebuilds += 1;
            self.last_rebuild = Some(result.assignment);
            self.stale_count = 0;
        }
        Ok(())
    }

    /// A feasible flow of value [`value`](Self::value) in the current graph.
    ///
    /// Edges inserted after the flow was computed carry nothing, which keeps
    /// an older flow feasible in the grown graph.
    pub fn flow(&self) -> Vec<bool> {
        let mut bits = match &self.last_rebuild {
            Some(bits) => bits.clone(),
            None => self.bmf.flow(),
        };
        bits.resize(self.net.edge_count(), false);
        bits
    }
}

/// Least integer `k >= eps * mu`, and at least 1. Products within a relative
/// `1e-9` of an integer are snapped to it so that e.g. `1.1 * 50`, which
/// evaluates to `55.00000000000001`, gives 55 and not 56.
pub fn stale_threshold(eps: f64, mu: u64) -> u64 {
    let x = eps * mu as f64;
    let nearest = libm::round(x);
    let k = if (x - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest as u64
    } else {
        libm::ceil(x) as u64
    };
    k.max(1)
}

/// `max(1, round(sqrt(m / eps)))`, the balanced choice of `mu` for an
/// expected number of insertions. Callers clamp the result to the vertex count.
pub fn suggested_mu(expected_edges: u64, eps: f64) -> Result<u64, Error> {
    if expected_edges == 0 {
        return Err(Error::ZeroEdges);
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidEpsilon(eps));
    }
    let mu = libm::round(libm::sqrt(expected_edges as f64 / eps));
    Ok((mu as u64).max(1))
}
