//! Exact max-flow on a snapshot of a [`FlowNetwork`].
//!
//! Only the edge endpoints and terminals of the snapshot are read; its flow
//! bits are ignored and never modified. [`dinic_max_flow`] is the production
//! solver; [`edmonds_karp`] is a deliberately plain reference used as an
//! oracle.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Violation;
use crate::network::{check_assignment, FlowNetwork, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub value: u64,
    /// Flow bit per edge, indexed by `EdgeId`.
    pub assignment: Vec<bool>,
    /// Residual arcs examined while solving.
    pub arc_scans: u64,
}

const UNSEEN: u32 = u32::MAX;

/// Dinic's algorithm specialised to unit capacities.
///
/// Arcs live in adjacency order: the arcs leaving `v` occupy slots
/// `start[v]..start[v + 1]`, each with its head, residual capacity bit and
/// the slot of its reverse arc.
pub fn dinic_max_flow(net: &FlowNetwork) -> FlowResult {
    let n = net.vertex_count();
    let m = net.edge_count();
    let (s, t) = (net.source().0, net.target().0);

    let mut start = vec![0u32; n + 1];
    for r in net.edges().iter().filter(|r| !r.is_self_loop()) {
        start[r.tail.0 + 1] += 1;
        start[r.head.0 + 1] += 1;
    }
    for v in 0..n {
        start[v + 1] += start[v];
    }
    let slots = start[n] as usize;
    let mut head = vec![0u32; slots];
    let mut rev = vec![0u32; slots];
    let mut cap = vec![false; slots];
    let mut forward_slot = vec![usize::MAX; m];
    let mut fill = start.clone();
    for (e, r) in net.edges().iter().enumerate() {
        if r.is_self_loop() {
            continue;
        }
        let (a, b) = (fill[r.tail.0] as usize, fill[r.head.0] as usize);
        fill[r.tail.0] += 1;
        fill[r.head.0] += 1;
        head[a] = r.head.0 as u32;
        head[b] = r.tail.0 as u32;
        rev[a] = b as u32;
        rev[b] = a as u32;
        cap[a] = true;
        forward_slot[e] = a;
    }

    let mut level = vec![UNSEEN; n];
    let mut cursor = vec![0u32; n];
    let mut queue = VecDeque::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut value = 0u64;
    let mut scans = 0u64;

    loop {
        level.fill(UNSEEN);
        level[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            for a in start[x] as usize..start[x + 1] as usize {
                scans += 1;
                let y = head[a] as usize;
                if cap[a] && level[y] == UNSEEN {
                    level[y] = level[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if level[t] == UNSEEN {
            break;
        }

        cursor.copy_from_slice(&start[..n]);
        // stack holds the slots of the current partial path from s.
        stack.clear();
        let mut x = s;
        loop {
            if x == t {
                for &a in &stack {
                    cap[a] = false;
                    cap[rev[a] as usize] = true;
                }
                value += 1;
                stack.clear();
                x = s;
                continue;
            }
            let mut advanced = false;
            while cursor[x] < start[x + 1] {
                let a = cursor[x] as usize;
                scans += 1;
                let y = head[a] as usize;
                if cap[a] && level[y] == level[x] + 1 {
                    stack.push(a);
                    x = y;
                    advanced = true;
                    break;
                }
                cursor[x] += 1;
            }
            if advanced {
                continue;
            }
            // Dead end: x cannot reach t in this level graph.
            level[x] = UNSEEN;
            match stack.pop() {
                Some(a) => {
                    x = head[rev[a] as usize] as usize;
                    cursor[x] += 1;
                }
                None => break,
            }
        }
    }

    // An edge carries flow iff its forward slot lost its capacity.
    let assignment = forward_slot
        .iter()
        .map(|&a| a != usize::MAX && !cap[a])
        .collect();
    FlowResult {
        value,
        assignment,
        arc_scans: scans,
    }
}

/// Shortest augmenting paths, one BFS per unit of flow.
pub fn edmonds_karp(net: &FlowNetwork) -> FlowResult {
    let n = net.vertex_count();
    let (s, t) = (net.source().0, net.target().0);
    let edges: Vec<(usize, usize)> = net.edges().iter().map(|r| (r.tail.0, r.head.0)).collect();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(a, b)) in edges.iter().enumerate() {
        if a != b {
            out[a].push(e);
            inc[b].push(e);
        }
    }
    let mut flow = vec![false; edges.len()];
    let mut value = 0;
    let mut scans = 0;
    loop {
        // pred[v] = (previous vertex, edge used)
        let mut pred: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &e in &out[x] {
                scans += 1;
                let y = edges[e].1;
                if !flow[e] && !seen[y] {
                    seen[y] = true;
                    pred[y] = Some((x, e));
                    queue.push_back(y);
                }
            }
            for &e in &inc[x] {
                scans += 1;
                let y = edges[e].0;
                if flow[e] && !seen[y] {
                    seen[y] = true;
                    pred[y] = Some((x, e));
                    queue.push_back(y);
                }
            }
        }
        if !seen[t] {
            break;
        }
        let mut cur = t;
        while let Some((p, e)) = pred[cur] {
            flow[e] = !flow[e];
            cur = p;
        }
        value += 1;
    }
    FlowResult {
        value,
        assignment: flow,
        arc_scans: scans,
    }
}

/// True iff `assignment` is a maximum flow: no s-t path remains in its
/// residual graph. An invalid assignment is reported as a violation rather
/// than as non-optimal.
pub fn verify_optimal(net: &FlowNetwork, assignment: &[bool]) -> Result<bool, Violation> {
    check_assignment(net, assignment)?;
    Ok(!residual_reaches(net, assignment, net.target()))
}

fn residual_reaches(net: &FlowNetwork, assignment: &[bool], goal: VertexId) -> bool {
    let n = net.vertex_count();
    let mut seen = vec![false; n];
    seen[net.source().0] = true;
    let mut queue = VecDeque::from([net.source()]);
    while let Some(x) = queue.pop_front() {
        if x == goal {
            return true;
        }
        let forward = net
            .out_edges(x)
            .iter()
            .filter(|e| !assignment[e.0])
            .map(|e| net.edges()[e.0].head);
        let backward = net
            .in_edges(x)
            .iter()
            .filter(|e| assignment[e.0])
            .map(|e| net.edges()[e.0].tail);
        for y in forward.chain(backward) {
            if !seen[y.0] {
                seen[y.0] = true;
                queue.push_back(y);
            }
        }
    }
    false
}
