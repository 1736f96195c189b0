use std::collections::VecDeque;

use incflow_core::{ReachTree, VertexId};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bfs(n: usize, root: usize, arcs: &[(usize, usize)]) -> Vec<bool> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in arcs {
        adj[a].push(b);
    }
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut q = VecDeque::from([root]);
    while let Some(x) = q.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                q.push_back(y);
            }
        }
    }
    seen
}

fn random_arcs(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<(usize, usize)> {
    (0..k)
        .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
        .collect()
}

#[test]
fn incremental_matches_bfs_on_every_prefix() {
    for seed in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(2..=20);
        let k = rng.random_range(0..60);
        let arcs = random_arcs(&mut rng, n, k);
        let mut tree = ReachTree::new(n, VertexId(0)).unwrap();
        for (i, &(a, b)) in arcs.iter().enumerate() {
            tree.insert_arc(VertexId(a), VertexId(b), i).unwrap();
            let oracle = bfs(n, 0, &arcs[..=i]);
            for (x, &want) in oracle.iter().enumerate() {
                assert_eq!(
                    tree.reaches(VertexId(x)),
                    want,
                    "seed {seed} prefix {i} vertex {x}"
                );
            }
        }
        let c = tree.counters();
        assert!(c.update_calls <= 2 * c.inserted_arcs);
    }
}

#[test]
fn init_equals_incremental() {
    for seed in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1_000 + seed);
        let n = rng.random_range(2..=20);
        let k = rng.random_range(0..60);
        let arcs = random_arcs(&mut rng, n, k);
        let built = ReachTree::init(
            n,
            VertexId(0),
            arcs.iter().map(|&(a, b)| (VertexId(a), VertexId(b), ())),
        )
        .unwrap();
        let mut grown = ReachTree::new(n, VertexId(0)).unwrap();
        for &(a, b) in arcs.iter().rev() {
            grown.insert_arc(VertexId(a), VertexId(b), ()).unwrap();
        }
        for x in 0..n {
            assert_eq!(built.reaches(VertexId(x)), grown.reaches(VertexId(x)));
        }
        assert!(built.counters().update_calls <= built.counters().initial_arcs);
    }
}

#[test]
fn extracted_paths_are_simple_chains_of_inserted_arcs() {
    for seed in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(2_000 + seed);
        let n = rng.random_range(2..=20);
        let k = rng.random_range(0..80);
        let arcs = random_arcs(&mut rng, n, k);
        let mut tree = ReachTree::new(n, VertexId(0)).unwrap();
        for (i, &(a, b)) in arcs.iter().enumerate() {
            tree.insert_arc(VertexId(a), VertexId(b), i).unwrap();
        }
        for x in 0..n {
            let Ok(path) = tree.extract_path(VertexId(x)) else {
                assert!(!tree.reaches(VertexId(x)));
                continue;
            };
            assert!(path.len() < n);
            let mut at = 0;
            let mut visited = vec![false; n];
            visited[0] = true;
            for arc in &path {
                assert_eq!(arc.from.0, at);
                assert_eq!(arcs[arc.label], (arc.from.0, arc.to.0));
                assert!(!visited[arc.to.0], "repeated vertex");
                visited[arc.to.0] = true;
                at = arc.to.0;
            }
            assert_eq!(at, x);
        }
    }
}

#[test]
fn ten_thousand_inserts_stay_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let n = 3_000;
    let mut tree = ReachTree::new(n, VertexId(0)).unwrap();
    for _ in 0..10_000 {
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        tree.insert_arc(VertexId(a), VertexId(b), ()).unwrap();
    }
    let c = tree.counters();
    assert_eq!(c.inserted_arcs, 10_000);
    assert!(c.update_calls <= 2 * c.inserted_arcs, "{c:?}");
}

proptest! {
    #[test]
    fn parents_lead_back_to_root(
        n in 2usize..16,
        arcs in prop::collection::vec((0usize..16, 0usize..16), 0..50),
    ) {
        let arcs: Vec<_> = arcs.into_iter().map(|(a, b)| (a % n, b % n)).collect();
        let mut tree = ReachTree::new(n, VertexId(0)).unwrap();
        for &(a, b) in &arcs {
            tree.insert_arc(VertexId(a), VertexId(b), ()).unwrap();
        }
        for x in 0..n {
            let mut cur = VertexId(x);
            let mut steps = 0;
            while let Some(p) = tree.parent(cur) {
                prop_assert!(tree.reaches(p));
                cur = p;
                steps += 1;
                prop_assert!(steps < n);
            }
            prop_assert!(!tree.reaches(VertexId(x)) || cur == VertexId(0));
        }
    }
}
