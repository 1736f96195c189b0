//! Directed unit-capacity multigraph carrying an integral s-t flow.
//!
//! Every edge has capacity one, so a flow is one bit per edge. The residual
//! graph keeps each edge as an arc: in its own direction while the edge is
//! empty, reversed once it carries flow. Residual out-arcs are kept in a
//! per-vertex index that is patched whenever a flow bit flips.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Violation};

/// Index of a vertex, valid iff it is below the vertex count of its network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for VertexId {
    fn from(v: usize) -> Self {
        VertexId(v)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Index of an edge. Assigned densely in insertion order and never reused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeRecord {
    pub tail: VertexId,
    pub head: VertexId,
    pub flow: bool,
}

impl EdgeRecord {
    #[inline]
    pub fn is_self_loop(&self) -> bool {
        self.tail == self.head
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcKind {
    Forward,
    Backward,
}

/// An arc of the residual graph, tied to the edge it was derived from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidualArc {
    pub from: VertexId,
    pub to: VertexId,
    pub edge: EdgeId,
    pub kind: ArcKind,
}

impl ResidualArc {
    /// The residual arc currently induced by `record`, or `None` for a self-loop.
    pub fn of_edge(edge: EdgeId, record: &EdgeRecord) -> Option<Self> {
        if record.is_self_loop() {
            return None;
        }
        Some(if record.flow {
            ResidualArc {
                from: record.head,
                to: record.tail,
                edge,
                kind: ArcKind::Backward,
            }
        } else {
            ResidualArc {
                from: record.tail,
                to: record.head,
                edge,
                kind: ArcKind::Forward,
            }
        })
    }
}

const NO_SLOT: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    n: usize,
    source: VertexId,
    target: VertexId,
    edges: Vec<EdgeRecord>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    // residual_out[v] lists edges whose residual arc leaves v; slot[e] is the
    // position of e in that list.
    residual_out: Vec<Vec<EdgeId>>,
    slot: Vec<usize>,
    value: u64,
}

impl FlowNetwork {
    pub fn new(n: usize, source: VertexId, target: VertexId) -> Result<Self, Error> {
        check_vertex(source, n)?;
        check_vertex(target, n)?;
        if source == target {
            return Err(Error::SourceIsTarget(source));
        }
        Ok(FlowNetwork {
            n,
            source,
            target,
            edges: Vec::new(),
            out_edges: vec![Vec::new(); n],
            in_edges: vec![Vec::new(); n],
            residual_out: vec![Vec::new(); n],
            slot: Vec::new(),
            value: 0,
        })
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn source(&self) -> VertexId {
        self.source
    }

    #[inline]
    pub fn target(&self) -> VertexId {
        self.target
    }

    #[inline]
    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Option<&EdgeRecord> {
        self.edges.get(e.0)
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    /// Current flow value, `outflow(s) - inflow(s)`.
    #[inline]
    pub fn flow_value(&self) -> u64 {
        self.value
    }

    /// Per-edge flow bits indexed by `EdgeId`.
    pub fn flow_assignment(&self) -> Vec<bool> {
        self.edges.iter().map(|e| e.flow).collect()
    }

    pub fn is_valid_vertex(&self, v: VertexId) -> bool {
        v.0 < self.n
    }

    /// Appends an empty edge `u -> v`. Parallel edges and self-loops are
    /// accepted; a self-loop never enters the residual graph.
    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, Error> {
        check_vertex(u, self.n)?;
        check_vertex(v, self.n)?;
        let id = EdgeId(self.edges.len());
        self.edges.push(EdgeRecord {
            tail: u,
            head: v,
            flow: false,
        });
        self.out_edges[u.0].push(id);
        self.in_edges[v.0].push(id);
        if u == v {
            self.slot.push(NO_SLOT);
        } else {
            self.slot.push(self.residual_out[u.0].len());
            self.residual_out[u.0].push(id);
        }
        Ok(id)
    }

    /// Arcs leaving `v` in the residual graph: forward arcs of empty
    /// out-edges and backward arcs of saturated in-edges.
    pub fn residual_out(&self, v: VertexId) -> impl Iterator<Item = ResidualArc> + '_ {
        self.residual_out[v.0].iter().map(move |&e| {
            ResidualArc::of_edge(e, &self.edges[e.0]).expect("self-loops are never indexed")
        })
    }

    /// Number of residual arcs leaving `v`.
    pub fn residual_degree(&self, v: VertexId) -> usize {
        self.residual_out[v.0].len()
    }

    /// Every residual arc of the network, in edge order. Costs `O(m)`
    /// regardless of the vertex count.
    pub fn residual_arcs(&self) -> impl Iterator<Item = ResidualArc> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(i, r)| ResidualArc::of_edge(EdgeId(i), r))
    }

    /// Pushes one unit along `path`, a simple s-t path in the current
    /// residual graph. The path is validated completely before any flow bit
    /// changes, so a rejected path leaves the network untouched.
    pub fn augment(&mut self, path: &[ResidualArc]) -> Result<(), Error> {
        self.validate_path(path)?;
        let before = self.value;
        for arc in path {
            self.flip(arc.edge);
        }
        self.value += 1;
        debug_assert_eq!(self.value, before + 1);
        debug_assert_eq!(self.source_balance(&self.flow_assignment()), Ok(self.value));
        Ok(())
    }

    fn validate_path(&self, path: &[ResidualArc]) -> Result<(), Error> {
        let first = path.first().ok_or(Error::EmptyPath)?;
        if first.from != self.source {
            return Err(Error::PathStart {
                source_vertex: self.source,
                found: first.from,
            });
        }
        let last = path.last().expect("non-empty");
        if last.to != self.target {
            return Err(Error::PathEnd {
                target: self.target,
                found: last.to,
            });
        }
        for (index, arc) in path.iter().enumerate() {
            let record = self
                .edges
                .get(arc.edge.0)
                .ok_or(Error::EdgeOutOfRange(arc.edge))?;
            if ResidualArc::of_edge(arc.edge, record) != Some(*arc) {
                return Err(Error::StaleArc { index });
            }
            if index > 0 && path[index - 1].to != arc.from {
                return Err(Error::BrokenChain { index });
            }
        }
        let mut visited: Vec<VertexId> = path.iter().map(|a| a.from).collect();
        visited.push(last.to);
        visited.sort_unstable();
        if let Some(w) = visited.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex(w[0]));
        }
        Ok(())
    }

    fn flip(&mut self, e: EdgeId) {
        let record = self.edges[e.0];
        let (old_from, new_from) = if record.flow {
            (record.head, record.tail)
        } else {
            (record.tail, record.head)
        };
        let pos = self.slot[e.0];
        let list = &mut self.residual_out[old_from.0];
        list.swap_remove(pos);
        if let Some(&moved) = list.get(pos) {
            self.slot[moved.0] = pos;
        }
        self.slot[e.0] = self.residual_out[new_from.0].len();
        self.residual_out[new_from.0].push(e);
        self.edges[e.0].flow = !record.flow;
    }

    /// Checks conservation and the recorded value against the current bits.
    pub fn check_valid(&self) -> Result<(), Violation> {
        let actual = check_assignment(self, &self.flow_assignment())?;
        if actual != self.value {
            return Err(Violation::ValueMismatch {
                recorded: self.value,
                actual,
            });
        }
        Ok(())
    }

    fn source_balance(&self, assignment: &[bool]) -> Result<u64, Violation> {
        let (inflow, outflow) = self.balance(self.source, assignment);
        outflow
            .checked_sub(inflow)
            .ok_or(Violation::NegativeValue { inflow, outflow })
    }

    fn balance(&self, v: VertexId, assignment: &[bool]) -> (u64, u64) {
        let count = |ids: &[EdgeId]| ids.iter().filter(|e| assignment[e.0]).count() as u64;
        (count(&self.in_edges[v.0]), count(&self.out_edges[v.0]))
    }

    /// Overwrites a flow bit without any bookkeeping beyond the residual
    /// index. Test support for constructing invalid states; the flow value
    /// counter is left alone.
    #[doc(hidden)]
    pub fn set_flow_unchecked(&mut self, e: EdgeId, flow: bool) {
        if self.edges[e.0].flow != flow {
            if self.edges[e.0].is_self_loop() {
                self.edges[e.0].flow = flow;
            } else {
                self.flip(e);
            }
        }
    }
}

/// Validates `assignment` as a flow in `net` and returns its value.
///
/// Capacity holds by construction (one bit per edge); what is checked is that
/// the assignment covers every edge, self-loops are empty, conservation holds
/// at every vertex other than the terminals, and the value is non-negative.
pub fn check_assignment(net: &FlowNetwork, assignment: &[bool]) -> Result<u64, Violation> {
    if assignment.len() != net.edge_count() {
        return Err(Violation::LengthMismatch {
            expected: net.edge_count(),
            got: assignment.len(),
        });
    }
    for (i, record) in net.edges.iter().enumerate() {
        if record.is_self_loop() && assignment[i] {
            return Err(Violation::SelfLoopFlow(EdgeId(i)));
        }
    }
    for v in (0..net.n).map(VertexId) {
        if v == net.source || v == net.target {
            continue;
        }
        let (inflow, outflow) = net.balance(v, assignment);
        if inflow != outflow {
            return Err(Violation::Conservation {
                vertex: v,
                inflow,
                outflow,
            });
        }
    }
    net.source_balance(assignment)
}

fn check_vertex(v: VertexId, n: usize) -> Result<(), Error> {
    if v.0 < n {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange { vertex: v, n })
    }
}
