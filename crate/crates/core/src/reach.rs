//! Incremental single-source reachability.
//!
//! A [`ReachTree`] keeps an out-tree rooted at the source whose vertex set is
//! exactly the set of vertices reachable over the arcs inserted so far. An
//! arc `u -> v` only changes the tree when `u` is in it and `v` is not; then
//! `v` is attached below `u` and the arcs already stored at `v` are replayed,
//! which may cascade further. Each stored arc is replayed at most once, so a
//! lifetime of `k` insertions costs `O(k)` in total.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::network::VertexId;

/// Work performed by a [`ReachTree`] since its last (re)initialization.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReachCounters {
    /// Arcs handed to `init`.
    pub initial_arcs: u64,
    /// Arcs handed to `insert_arc`.
    pub inserted_arcs: u64,
    /// Arc examinations: one per `insert_arc` call plus one per stored arc
    /// replayed by an initial search or an attachment cascade.
    pub update_calls: u64,
}

/// One arc on a tree path, with the opaque label it was inserted under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeArc<L> {
    pub from: VertexId,
    pub to: VertexId,
    pub label: L,
}

// Per-vertex state carries the epoch it was written in; anything stamped
// with an older epoch reads as empty. A rebuild bumps the epoch instead of
// clearing `n` entries, so it only pays for the arcs it is handed.
#[derive(Debug, Clone)]
pub struct ReachTree<L> {
    root: VertexId,
    epoch: u32,
    member: Vec<u32>,
    parent: Vec<Option<(VertexId, L)>>,
    arcs: Vec<Vec<(VertexId, L)>>,
    arcs_epoch: Vec<u32>,
    counters: ReachCounters,
    work: Vec<VertexId>,
}

impl<L: Clone> ReachTree<L> {
    /// A tree over `n` vertices containing only `root`.
    pub fn new(n: usize, root: VertexId) -> Result<Self, Error> {
        if root.0 >= n {
            return Err(Error::VertexOutOfRange { vertex: root, n });
        }
        let mut member = vec![0; n];
        member[root.0] = 1;
        Ok(ReachTree {
            root,
            epoch: 1,
            member,
            parent: vec![None; n],
            arcs: vec![Vec::new(); n],
            arcs_epoch: vec![0; n],
            counters: ReachCounters::default(),
            work: Vec::new(),
        })
    }

    /// Builds the tree of everything reachable from `root` over `arcs` with a
    /// breadth-first search. Equivalent to `new` followed by inserting every
    /// arc, in any order.
    pub fn init<I>(n: usize, root: VertexId, arcs: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (VertexId, VertexId, L)>,
    {
        let mut tree = Self::new(n, root)?;
        tree.rebuild(arcs)?;
        Ok(tree)
    }

    /// Same as [`init`](Self::init) with the current root and vertex count,
    /// reusing this tree's buffers. Counters restart from zero.
    pub fn rebuild<I>(&mut self, arcs: I) -> Result<(), Error>
    where
        I: IntoIterator<Item = (VertexId, VertexId, L)>,
    {
        if self.epoch == u32::MAX {
            self.member.fill(0);
            self.arcs_epoch.fill(0);
            self.epoch = 0;
        }
        self.epoch += 1;
        self.member[self.root.0] = self.epoch;
        self.counters = ReachCounters::default();
        for (u, v, label) in arcs {
            self.check(u)?;
            self.check(v)?;
            self.store(u, v, label);
            self.counters.initial_arcs += 1;
        }
        // Breadth-first: `work` is used as a queue with a moving head.
        let mut queue = core::mem::take(&mut self.work);
        queue.clear();
        queue.push(self.root);
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for i in 0..self.stored(x) {
                self.counters.update_calls += 1;
                let w = self.arcs[x.0][i].0;
                if !self.reaches(w) {
                    let label = self.arcs[x.0][i].1.clone();
                    self.attach(w, x, label);
                    queue.push(w);
                }
            }
        }
        queue.clear();
        self.work = queue;
        Ok(())
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.member.len()
    }

    pub fn counters(&self) -> ReachCounters {
        self.counters
    }

    /// Records the arc `u -> v` and grows the tree if it makes new vertices
    /// reachable.
    pub fn insert_arc(&mut self, u: VertexId, v: VertexId, label: L) -> Result<(), Error> {
        self.check(u)?;
        self.check(v)?;
        self.counters.inserted_arcs += 1;
        self.counters.update_calls += 1;
        let grows = self.reaches(u) && !self.reaches(v);
        if grows {
            self.attach(v, u, label.clone());
        }
        self.store(u, v, label);
        if grows {
            self.cascade(v);
        }
        Ok(())
    }

    fn store(&mut self, u: VertexId, v: VertexId, label: L) {
        if self.arcs_epoch[u.0] != self.epoch {
            self.arcs[u.0].clear();
            self.arcs_epoch[u.0] = self.epoch;
        }
        self.arcs[u.0].push((v, label));
    }

    /// Number of arcs stored at `x` in the current epoch.
    fn stored(&self, x: VertexId) -> usize {
        if self.arcs_epoch[x.0] == self.epoch {
            self.arcs[x.0].len()
        } else {
            0
        }
    }

    fn attach(&mut self, v: VertexId, parent: VertexId, label: L) {
        self.member[v.0] = self.epoch;
        self.parent[v.0] = Some((parent, label));
    }

    fn cascade(&mut self, start: VertexId) {
        let mut stack = core::mem::take(&mut self.work);
        stack.push(start);
        while let Some(x) = stack.pop() {
            for i in 0..self.stored(x) {
                self.counters.update_calls += 1;
                let w = self.arcs[x.0][i].0;
                if !self.reaches(w) {
                    let label = self.arcs[x.0][i].1.clone();
                    self.attach(w, x, label);
                    stack.push(w);
                }
            }
        }
        self.work = stack;
    }

    #[inline]
    pub fn reaches(&self, v: VertexId) -> bool {
        self.member.get(v.0) == Some(&self.epoch)
    }

    /// The tree path from the root to `v`, root end first.
    pub fn extract_path(&self, v: VertexId) -> Result<Vec<TreeArc<L>>, Error> {
        self.check(v)?;
        if !self.reaches(v) {
            return Err(Error::NotReachable(v));
        }
        let mut path = Vec::new();
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            let label = self.parent[cur.0].as_ref().expect("tree vertex").1.clone();
            path.push(TreeArc {
                from: p,
                to: cur,
                label,
            });
            cur = p;
            debug_assert!(path.len() < self.member.len());
        }
        debug_assert_eq!(cur, self.root);
        path.reverse();
        Ok(path)
    }

    /// Parent of `v` in the tree, if `v` is a non-root tree vertex.
    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        if v == self.root || !self.reaches(v) {
            return None;
        }
        self.parent[v.0].as_ref().map(|(p, _)| *p)
    }

    fn check(&self, v: VertexId) -> Result<(), Error> {
        if v.0 < self.member.len() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.member.len(),
            })
        }
    }
}
