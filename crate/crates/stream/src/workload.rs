//! Deterministic stream generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::stream::{format_stream, Stream, StreamEvent};

/// `(n, s, t, arcs)` in insertion order.
pub type Arcs = (usize, usize, usize, Vec<(usize, usize)>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Workload {
    /// `m` arcs drawn uniformly from ordered pairs `u != v`; `s = 0`, `t = n - 1`.
    Gnm { n: usize, m: usize },
    /// `depth` layers of `width` vertices between `s` and `t`. Every vertex
    /// has an edge from the previous layer's vertex in the same position, so
    /// the max flow is exactly `width`; the remaining `edges` are random arcs
    /// between consecutive layers.
    Layered {
        width: usize,
        depth: usize,
        edges: Option<usize>,
    },
    /// `k` vertex-disjoint s-t paths of `len` edges each; max flow `k`.
    ParallelPaths { k: usize, len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WorkloadError {
    #[error("gnm needs n >= 2 and m >= 1")]
    Gnm,
    #[error("layered needs width >= 1 and depth >= 1")]
    LayeredShape,
    #[error("layered({width}, {depth}) needs at least {required} edges, asked for {asked}")]
    LayeredEdges {
        width: usize,
        depth: usize,
        required: usize,
        asked: usize,
    },
    #[error("parallel-paths needs k >= 1 and len >= 1")]
    ParallelPaths,
}

impl Workload {
    pub fn vertex_count(&self) -> usize {
        match *self {
            Workload::Gnm { n, .. } => n,
            Workload::Layered { width, depth, .. } => width * depth + 2,
            Workload::ParallelPaths { k, len } => 2 + k * (len - 1),
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            Workload::Gnm { n, m } => format!("gnm n={n} m={m}"),
            Workload::Layered {
                width,
                depth,
                edges,
            } => match edges {
                Some(e) => format!("layered width={width} depth={depth} edges={e}"),
                None => format!("layered width={width} depth={depth}"),
            },
            Workload::ParallelPaths { k, len } => format!("parallel-paths k={k} len={len}"),
        }
    }

    fn validate(&self) -> Result<(), WorkloadError> {
        match *self {
            Workload::Gnm { n, m } if n < 2 || m == 0 => Err(WorkloadError::Gnm),
            Workload::Layered { width, depth, .. } if width == 0 || depth == 0 => {
                Err(WorkloadError::LayeredShape)
            }
            Workload::Layered {
                width,
                depth,
                edges: Some(asked),
            } => {
                let required = width * (depth + 1);
                if asked < required || (depth == 1 && asked != required) {
                    Err(WorkloadError::LayeredEdges {
                        width,
                        depth,
                        required,
                        asked,
                    })
                } else {
                    Ok(())
                }
            }
            Workload::ParallelPaths { k, len } if k == 0 || len == 0 => {
                Err(WorkloadError::ParallelPaths)
            }
            _ => Ok(()),
        }
    }

    /// The arcs of the workload in insertion order, with `(n, s, t)`.
    pub fn arcs(&self, seed: u64) -> Result<Arcs, WorkloadError> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.vertex_count();
        let (s, t) = (0, n - 1);
        let arcs = match *self {
            Workload::Gnm { n, m } => (0..m)
                .map(|_| {
                    let u = rng.random_range(0..n);
                    let mut v = rng.random_range(0..n - 1);
                    if v >= u {
                        v += 1;
                    }
                    (u, v)
                })
                .collect(),
            Workload::Layered {
                width,
                depth,
                edges,
            } => {
                let id = |layer: usize, j: usize| 1 + layer * width + j;
                let mut arcs = Vec::new();
                for j in 0..width {
                    arcs.push((s, id(0, j)));
                    arcs.push((id(depth - 1, j), t));
                    for layer in 0..depth - 1 {
                        arcs.push((id(layer, j), id(layer + 1, j)));
                    }
                }
                let total = edges.unwrap_or(width * (depth + 1) + 2 * width * (depth - 1));
                while arcs.len() < total {
                    let layer = rng.random_range(0..depth - 1);
                    let a = rng.random_range(0..width);
                    let b = rng.random_range(0..width);
                    arcs.push((id(layer, a), id(layer + 1, b)));
                }
                arcs.shuffle(&mut rng);
                arcs
            }
            Workload::ParallelPaths { k, len } => {
                let mut arcs = Vec::with_capacity(k * len);
                for p in 0..k {
                    let inner = |i: usize| 1 + p * (len - 1) + i;
                    let mut prev = s;
                    for i in 0..len - 1 {
                        arcs.push((prev, inner(i)));
                        prev = inner(i);
                    }
                    arcs.push((prev, t));
                }
                arcs.shuffle(&mut rng);
                arcs
            }
        };
        Ok((n, s, t, arcs))
    }

    /// Builds a stream with a query after every `query_every` inserts and
    /// always a final query. `query_every = 0` emits only the final query.
    pub fn stream(&self, seed: u64, query_every: usize) -> Result<Stream, WorkloadError> {
        let (n, source, target, arcs) = self.arcs(seed)?;
        let mut events = Vec::with_capacity(arcs.len() * 2);
        for (i, &(u, v)) in arcs.iter().enumerate() {
            events.push(StreamEvent::Insert(u, v));
            if query_every > 0 && (i + 1) % query_every == 0 {
                events.push(StreamEvent::Query);
            }
        }
        if events.last() != Some(&StreamEvent::Query) {
            events.push(StreamEvent::Query);
        }
        Ok(Stream {
            n,
            source,
            target,
            events,
        })
    }

    /// Stream file text, with a comment naming the generator settings.
    pub fn render(&self, seed: u64, query_every: usize) -> Result<String, WorkloadError> {
        let stream = self.stream(seed, query_every)?;
        let comment = format!("incflow gen {} seed={seed}", self.describe());
        Ok(format_stream(&stream, &[comment]))
    }
}
