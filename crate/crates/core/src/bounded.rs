//! Exact incremental max-flow while the value stays within a cutoff.
//!
//! The structure works in rounds. A round keeps a [`ReachTree`] from the
//! source over the current residual graph; each inserted edge adds its
//! forward residual arc to the tree. When the target becomes reachable, the
//! tree path to it is an augmenting path: one unit is pushed along it and the
//! tree is rebuilt from the new residual graph, starting the next round. A
//! round therefore costs `O(m)` and there are at most `mu + 2` of them.
//!
//! Once the value exceeds `mu` the structure is saturated: it reports
//! `mu + 1` forever and ignores further insertions.

use alloc::vec::Vec;

use crate::error::Error;
use crate::network::{EdgeId, FlowNetwork, ResidualArc, VertexId};
use crate::reach::{ReachCounters, ReachTree};

/// Work counters, exported as a flat record.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BmfCounters {
    /// Insertions applied to the network.
    pub accepted: u64,
    /// Insertions dropped because the structure was saturated.
    pub ignored: u64,
    /// Residual arcs touched: enumerated for a rebuild, examined by the
    /// tree, or pushed along by an augmentation.
    pub arc_scans: u64,
    /// Tree arc examinations (insertions plus cascaded replays).
    pub update_calls: u64,
    /// Reach trees built from a full residual snapshot.
    pub tree_rebuilds: u64,
    pub augmentations: u64,
}

/// Accounting for one round, i.e. one reach tree lifetime.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EpochRecord {
    pub initial_arcs: u64,
    pub inserted_arcs: u64,
    pub update_calls: u64,
}

impl From<ReachCounters> for EpochRecord {
    fn from(c: ReachCounters) -> Self {
        EpochRecord {
            initial_arcs: c.initial_arcs,
            inserted_arcs: c.inserted_arcs,
            update_calls: c.update_calls,
        }
    }
}

/// What a call to [`BoundedMaxFlow::insert`] did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertOutcome {
    /// Saturated; the edge was not recorded.
    Ignored,
    /// Edge recorded without changing the value.
    Added(EdgeId),
    /// Edge recorded and the value went up by one.
    Augmented(EdgeId),
}

#[derive(Debug, Clone)]
pub struct BoundedMaxFlow {
    net: FlowNetwork,
    mu: u64,
    // Tree arcs are labelled with their edge; flow bits are fixed within a
    // round, so the residual arc is recovered from the edge when needed.
    tree: ReachTree<EdgeId>,
    saturated: bool,
    counters: BmfCounters,
    // Finished rounds; the live round is read from `tree`.
    epochs: Vec<EpochRecord>,
}

impl BoundedMaxFlow {
    pub fn new(n: usize, source: VertexId, target: VertexId, mu: u64) -> Result<Self, Error> {
        let net = FlowNetwork::new(n, source, target)?;
        let tree = ReachTree::new(n, source)?;
        Ok(BoundedMaxFlow {
            net,
            mu,
            tree,
            saturated: false,
            counters: BmfCounters::default(),
            epochs: Vec::new(),
        })
    }

    pub fn mu(&self) -> u64 {
        self.mu
    }

    /// Exact max-flow value while it is at most `mu`; `mu + 1` means the
    /// true value is at least `mu + 1`.
    #[inline]
    pub fn value(&self) -> u64 {
        self.net.flow_value()
    }

    #[inline]
    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// Number of completed augmentation rounds; equals `value()`.
    pub fn round_count(&self) -> u64 {
        self.counters.augmentations
    }

    pub fn network(&self) -> &FlowNetwork {
        &self.net
    }

    /// The maintained flow, one bit per accepted edge.
    pub fn flow(&self) -> Vec<bool> {
        self.net.flow_assignment()
    }

    pub fn counters(&self) -> BmfCounters {
        let mut c = self.counters;
        c.update_calls += self.tree.counters().update_calls;
        c.arc_scans += self.tree.counters().update_calls;
        c
    }

    /// Per-round tree accounting, including the round in progress.
    pub fn epochs(&self) -> Vec<EpochRecord> {
        let mut all = self.epochs.clone();
        all.push(self.tree.counters().into());
        all
    }

    pub fn insert(&mut self, u: VertexId, v: VertexId) -> Result<InsertOutcome, Error> {
        if self.saturated {
            if !self.net.is_valid_vertex(u) || !self.net.is_valid_vertex(v) {
                return Err(Error::VertexOutOfRange {
                    vertex: if self.net.is_valid_vertex(u) { v } else { u },
                    n: self.net.vertex_count(),
                });
            }
            self.counters.ignored += 1;
            return Ok(InsertOutcome::Ignored);
        }
        let e = self.net.insert_edge(u, v)?;
        self.counters.accepted += 1;
        if u != v {
            self.tree.insert_arc(u, v, e)?;
        }
        if !self.tree.reaches(self.net.target()) {
            return Ok(InsertOutcome::Added(e));
        }

        let path: Vec<ResidualArc> = self
            .tree
            .extract_path(self.net.target())?
            .into_iter()
            .map(|a| {
                let arc = ResidualArc::of_edge(a.label, &self.net.edges()[a.label.0])
                    .expect("tree arcs come from residual arcs");
                debug_assert_eq!((arc.from, arc.to), (a.from, a.to));
                arc
            })
            .collect();
        self.counters.arc_scans += path.len() as u64;
        self.net.augment(&path)?;
        self.counters.augmentations += 1;
        if self.value() > self.mu {
            self.saturated = true;
        }
        self.rebuild_tree()?;
        debug_assert!(self.saturated || !self.tree.reaches(self.net.target()));
        Ok(InsertOutcome::Augmented(e))
    }

    fn rebuild_tree(&mut self) -> Result<(), Error> {
        let finished = self.tree.counters();
        self.counters.update_calls += finished.update_calls;
        self.counters.arc_scans += finished.update_calls;
        self.epochs.push(finished.into());

        let arcs = self.net.residual_arcs().map(|a| (a.from, a.to, a.edge));
        self.tree.rebuild(arcs)?;
        self.counters.arc_scans += self.tree.counters().initial_arcs;
        self.counters.tree_rebuilds += 1;
        Ok(())
    }
}
