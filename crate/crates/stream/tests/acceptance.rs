//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if
//! any hard criterion fails. The scaling check is informational only.
//!
//! Run with `cargo test -p incflow --test acceptance -- --nocapture`.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use incflow::bench::{self, BenchWorkload};
use incflow::{format_stream, parse_stream, Arcs, Workload};
use incflow_core::{
    dinic_max_flow, edmonds_karp, suggested_mu, verify_optimal, ApproxMaxFlow, BoundedMaxFlow,
    FlowNetwork, VertexId,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn v(i: usize) -> VertexId {
    VertexId(i)
}

/// Incrementally maintained exact value via Edmonds-Karp on every prefix.
struct Oracle {
    net: FlowNetwork,
}

impl Oracle {
    fn new(n: usize, s: usize, t: usize) -> Self {
        Oracle {
            net: FlowNetwork::new(n, v(s), v(t)).unwrap(),
        }
    }

    fn insert(&mut self, a: usize, b: usize) -> u64 {
        self.net.insert_edge(v(a), v(b)).unwrap();
        edmonds_karp(&self.net).value
    }
}

fn gnm(n: usize, m: usize, seed: u64) -> Arcs {
    Workload::Gnm { n, m }.arcs(seed).unwrap()
}

// 1 and 3 share the suite: 500 G(20, 150) streams with mu = n.
fn bmf_suite() -> (Outcome, Outcome) {
    let mut mismatches = 0u64;
    let mut prefixes = 0u64;
    let mut certified = 0u64;
    let mut uncertified = 0u64;
    for seed in 0..500 {
        let (n, s, t, arcs) = gnm(20, 150, seed);
        let mut bmf = BoundedMaxFlow::new(n, v(s), v(t), n as u64).unwrap();
        let mut oracle = Oracle::new(n, s, t);
        for &(a, b) in &arcs {
            bmf.insert(v(a), v(b)).unwrap();
            let exact = oracle.insert(a, b);
            prefixes += 1;
            if bmf.value() != exact {
                mismatches += 1;
            }
            if bmf.value() <= bmf.mu() {
                match verify_optimal(bmf.network(), &bmf.flow()) {
                    Ok(true) => certified += 1,
                    _ => uncertified += 1,
                }
            }
        }
    }
    (
        outcome(
            mismatches == 0,
            format!("{prefixes} prefixes, {mismatches} mismatches"),
        ),
        outcome(
            uncertified == 0 && certified > 0,
            format!("{certified} certified, {uncertified} violations"),
        ),
    )
}

// Epsilons as exact fractions p / q.
const EPSILONS: [(u64, u64); 3] = [(1, 10), (1, 2), (1, 1)];

fn sandwich() -> Outcome {
    let mut violations = 0u64;
    let mut prefixes = 0u64;
    for (p, q) in EPSILONS {
        let eps = p as f64 / q as f64;
        for seed in 0..200 {
            let (n, s, t, arcs) = gnm(30, 300, seed);
            let mu = suggested_mu(arcs.len() as u64, eps).unwrap().min(n as u64);
            let mut approx = ApproxMaxFlow::new(n, v(s), v(t), eps, mu).unwrap();
            let mut oracle = Oracle::new(n, s, t);
            for &(a, b) in &arcs {
                approx.insert(v(a), v(b)).unwrap();
                let exact = oracle.insert(a, b);
                let f = approx.value();
                prefixes += 1;
                // F <= F* and F* <= (1 + p/q) F, scaled by q.
                if f > exact || exact * q > (q + p) * f {
                    violations += 1;
                }
            }
        }
    }
    outcome(
        violations == 0,
        format!("{prefixes} prefixes over 3 epsilons, {violations} violations"),
    )
}

fn work_bound() -> Outcome {
    let m = 100_000;
    let mut notes = Vec::new();
    let mut pass = true;
    // Deep and narrow (never saturates), then wide and shallow (saturates).
    for (width, depth) in [(40, 50), (1000, 2)] {
        let workload = Workload::Layered {
            width,
            depth,
            edges: Some(m),
        };
        let (n, s, t, arcs) = workload.arcs(1).unwrap();
        let mu = suggested_mu(m as u64, 0.5).unwrap().min(n as u64);
        let mut bmf = BoundedMaxFlow::new(n, v(s), v(t), mu).unwrap();
        for &(a, b) in &arcs {
            bmf.insert(v(a), v(b)).unwrap();
        }
        let scans = bmf.counters().arc_scans;
        let limit = 4 * m as u64 * (mu + 2);
        let epochs = bmf.epochs();
        let over = epochs
            .iter()
            .filter(|e| e.update_calls > 2 * e.inserted_arcs + e.initial_arcs)
            .count();
        pass &= scans <= limit && over == 0;
        notes.push(format!(
            "layered {width}x{depth} n={n} mu={mu} value={}: scans {scans} <= {limit}, {} epochs, {over} over",
            bmf.value(),
            epochs.len()
        ));
    }
    outcome(pass, notes.join("; "))
}

fn cadence() -> Outcome {
    let workloads = [
        Workload::ParallelPaths { k: 400, len: 2 },
        Workload::ParallelPaths { k: 300, len: 3 },
        Workload::Layered {
            width: 120,
            depth: 3,
            edges: Some(900),
        },
    ];
    let mut pass = true;
    let mut runs = 0;
    let mut rebuilds_seen = 0;
    let mut failures = Vec::new();
    for workload in &workloads {
        for (p, q) in EPSILONS {
            let eps = p as f64 / q as f64;
            for seed in 0..5 {
                let (n, s, t, arcs) = workload.arcs(seed).unwrap();
                let mu = suggested_mu(arcs.len() as u64, eps).unwrap().min(n as u64);
                let mut approx = ApproxMaxFlow::new(n, v(s), v(t), eps, mu).unwrap();
                for &(a, b) in &arcs {
                    let before = approx.rebuild_count();
                    approx.insert(v(a), v(b)).unwrap();
                    if approx.rebuild_count() > before
                        && approx.value() != edmonds_karp(approx.network()).value
                    {
                        pass = false;
                        failures.push(format!(
                            "{} seed {seed}: stale value after rebuild",
                            workload.describe()
                        ));
                    }
                }
                let stats = approx.stats();
                let exact = edmonds_karp(approx.network()).value;
                // rebuilds <= stale / (eps mu) + 1, i.e. (rebuilds - 1) p mu <= stale q.
                // The per-threshold form is tighter: rebuilds <= stale / ceil(eps mu) + 1.
                let within = (stats.rebuilds == 0
                    || (stats.rebuilds - 1) * p * mu <= stats.stale * q)
                    && stats.rebuilds <= stats.stale / approx.rebuild_threshold() + 1;
                if !within {
                    pass = false;
                    failures.push(format!(
                        "{} eps={eps} seed {seed}: {} rebuilds, {} stale, mu={mu}",
                        workload.describe(),
                        stats.rebuilds,
                        stats.stale
                    ));
                }
                if exact <= mu {
                    pass = false;
                    failures.push(format!(
                        "{} seed {seed}: flow {exact} never exceeds mu={mu}",
                        workload.describe()
                    ));
                }
                runs += 1;
                rebuilds_seen += stats.rebuilds;
            }
        }
    }
    let mut detail = format!("{runs} runs with F* > mu, {rebuilds_seen} rebuilds checked");
    if !failures.is_empty() {
        detail.push_str(": ");
        detail.push_str(&failures[..failures.len().min(3)].join("; "));
    }
    outcome(pass, detail)
}

fn static_cross_check() -> Outcome {
    fn agrees(net: &FlowNetwork) -> bool {
        let d = dinic_max_flow(net);
        d.value == edmonds_karp(net).value && verify_optimal(net, &d.assignment) == Ok(true)
    }
    let mut graphs = 0u64;
    let mut bad = 0u64;
    for n in 2..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        // Every subset of at most six arcs, grown in lexicographic order.
        let mut chosen: Vec<usize> = Vec::new();
        loop {
            let mut net = FlowNetwork::new(n, v(0), v(n - 1)).unwrap();
            for &i in &chosen {
                net.insert_edge(v(pairs[i].0), v(pairs[i].1)).unwrap();
            }
            graphs += 1;
            bad += u64::from(!agrees(&net));
            let next = chosen.last().map_or(0, |&i| i + 1);
            if chosen.len() < 6 && next < pairs.len() {
                chosen.push(next);
                continue;
            }
            // Backtrack to the next subset.
            loop {
                match chosen.pop() {
                    None => break,
                    Some(i) if i + 1 < pairs.len() => {
                        chosen.push(i + 1);
                        break;
                    }
                    Some(_) => {}
                }
            }
            if chosen.is_empty() {
                break;
            }
        }
    }
    for seed in 0..500 {
        let (n, s, t, arcs) = gnm(30, 200, seed);
        let mut net = FlowNetwork::new(n, v(s), v(t)).unwrap();
        for &(a, b) in &arcs {
            net.insert_edge(v(a), v(b)).unwrap();
        }
        bad += u64::from(!agrees(&net));
    }
    outcome(
        bad == 0 && graphs == 63_038,
        format!("{graphs} exhaustive + 500 random graphs, {bad} disagreements"),
    )
}

fn scaling() -> Outcome {
    let rows = bench::scaling(BenchWorkload::Layered, &[10_000, 40_000, 160_000], 0.5, 0).unwrap();
    let growth: Vec<f64> = rows.iter().filter_map(|r| r.growth).collect();
    let per_insert: Vec<String> = rows
        .iter()
        .map(|r| format!("{:.0}", r.ns_per_insert))
        .collect();
    outcome(
        growth.iter().all(|&g| g <= 3.0),
        format!(
            "ns/insert {} growth {}",
            per_insert.join(" / "),
            growth
                .iter()
                .map(|g| format!("{g:.2}x"))
                .collect::<Vec<_>>()
                .join(" / ")
        ),
    )
}

fn incflow() -> Command {
    Command::new(env!("CARGO_BIN_EXE_incflow"))
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn stdout_of(cmd: &mut Command) -> Result<String, String> {
    let out = cmd.output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn cli_round_trip() -> Outcome {
    let mut failures = Vec::new();

    let gen = |seed: &str| {
        stdout_of(
            incflow()
                .args(["gen", "--seed", seed, "--query-every", "7", "layered"])
                .args(["--width", "6", "--depth", "4", "--edges", "90"]),
        )
    };
    match (gen("11"), gen("11")) {
        (Ok(a), Ok(b)) if a == b => match parse_stream(&a) {
            Ok(parsed) => {
                let comments: Vec<String> = a
                    .lines()
                    .filter_map(|l| l.strip_prefix("c ").map(str::to_owned))
                    .collect();
                if format_stream(&parsed, &comments) != a {
                    failures.push("format(parse(gen)) differs from gen".to_owned());
                }
                let dir =
                    std::env::temp_dir().join(format!("incflow-accept-{}", std::process::id()));
                std::fs::create_dir_all(&dir).unwrap();
                let path = dir.join("layered.stream");
                std::fs::write(&path, &a).unwrap();
                let run = || {
                    stdout_of(incflow().arg("run").arg("--stream").arg(&path).args([
                        "--strategy",
                        "approx",
                        "--epsilon",
                        "0.5",
                        "--verify",
                    ]))
                };
                match (run(), run()) {
                    (Ok(x), Ok(y)) if x == y && x.lines().count() == parsed.query_count() => {}
                    (Ok(_), Ok(_)) => failures.push("run output not deterministic".to_owned()),
                    (Err(e), _) | (_, Err(e)) => failures.push(format!("run failed: {e}")),
                }
                let _ = std::fs::remove_dir_all(&dir);
            }
            Err(e) => failures.push(format!("gen output does not parse: {e}")),
        },
        (Ok(_), Ok(_)) => failures.push("gen not deterministic".to_owned()),
        (Err(e), _) | (_, Err(e)) => failures.push(format!("gen failed: {e}")),
    }

    let goldens: [(&str, &[&str]); 3] = [
        (
            "backward_arc",
            &["--strategy", "exact-bmf", "--mu", "4", "--verify"],
        ),
        (
            "parallel_approx",
            &[
                "--strategy",
                "approx",
                "--epsilon",
                "1",
                "--mu",
                "2",
                "--verify",
            ],
        ),
        (
            "gnm_small",
            &[
                "--strategy",
                "approx",
                "--epsilon",
                "1",
                "--mu",
                "2",
                "--verify",
            ],
        ),
    ];
    for (name, args) in goldens {
        let dir = golden_dir();
        let expected = std::fs::read_to_string(dir.join(format!("{name}.out"))).unwrap();
        let got = stdout_of(
            incflow()
                .arg("run")
                .arg("--stream")
                .arg(dir.join(format!("{name}.stream")))
                .args(args),
        );
        match got {
            Ok(got) if got == expected => {}
            Ok(got) => failures.push(format!("{name}: expected {expected:?}, got {got:?}")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    let backward_final = std::fs::read_to_string(golden_dir().join("backward_arc.out"))
        .ok()
        .and_then(|s| s.lines().last().map(str::to_owned));
    if backward_final.as_deref() != Some("2 2 1.000000") {
        failures.push(format!("backward-arc final line {backward_final:?}"));
    }

    let detail = if failures.is_empty() {
        "gen/parse/run deterministic, 3 golden pairs match".to_owned()
    } else {
        failures.join("; ")
    };
    outcome(failures.is_empty(), detail)
}

#[test]
fn acceptance() {
    let started = Instant::now();
    let (exact, certificate) = bmf_suite();
    let results = [
        (
            1,
            "bounded structure matches per-prefix Edmonds-Karp",
            exact,
            true,
        ),
        (2, "approximation sandwich", sandwich(), true),
        (
            3,
            "optimality certificate while value <= mu",
            certificate,
            true,
        ),
        (4, "work bound and per-epoch tree calls", work_bound(), true),
        (
            5,
            "rebuild cadence and post-rebuild exactness",
            cadence(),
            true,
        ),
        (6, "Dinic matches Edmonds-Karp", static_cross_check(), true),
        (7, "scaling smoke test (informational)", scaling(), false),
        (8, "CLI round trip and golden files", cli_round_trip(), true),
    ];
    println!();
    let mut failed = Vec::new();
    for (id, name, result, hard) in &results {
        let tag = match (result.pass, hard) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "SOFT-FAIL",
        };
        println!("[{tag}] {id}. {name}: {}", result.detail);
        if !result.pass && *hard {
            failed.push(*id);
        }
    }
    println!(
        "acceptance finished in {:.1}s",
        started.elapsed().as_secs_f64()
    );
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
