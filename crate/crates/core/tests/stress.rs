//! Extended randomized validation over thousands of instances.

use matchflip::error::Error;
use matchflip::graph::Multigraph;
use matchflip::oracle::{bfs_shortest, enumerate_perfect_matchings};
use matchflip::rng::Rng;
use matchflip::solver::{opt_value_only, random_outerplanar_instance, solve, SpmrInstance};

/// Solves, validates the sequence end to end, cross-checks the value-only
/// path, and compares with the oracle when it fits the cap.
fn check(inst: &SpmrInstance) -> bool {
    let report = solve(inst).unwrap();
    report.sequence.validate(&inst.graph).unwrap();
    assert_eq!(report.sequence.matchings.last().unwrap(), &inst.n);
    assert_eq!(report.sequence.len(), report.opt);
    assert_eq!(report.dropped_identity_flips, 0);
    assert_eq!(opt_value_only(inst).unwrap(), report.opt);
    match bfs_shortest(&inst.graph, &inst.m, &inst.n, 100_000) {
        Ok((oracle_opt, _)) => {
            assert_eq!(report.opt, oracle_opt, "oracle mismatch on {inst:?}");
            true
        }
        Err(Error::Size(_)) => false,
        Err(other) => panic!("oracle failed: {other}"),
    }
}

#[test]
fn generated_instances_large_sweep() {
    let mut checked = 0u64;
    for n in [4usize, 6, 8, 10, 12, 14, 16] {
        for di in 0..5u64 {
            let density = 0.1 + 0.2 * di as f64;
            for seed in 0..60 {
                let s = seed ^ ((n as u64) << 20) ^ (di << 40);
                let inst = random_outerplanar_instance(n, density, s).unwrap();
                if check(&inst) {
                    checked += 1;
                }
            }
        }
    }
    println!("large sweep: {checked} instances oracle-checked");
}

#[test]
fn instances_with_parallel_edges() {
    let mut checked = 0u64;
    for seed in 0..400u64 {
        let mut rng = Rng::seeded(seed ^ 0xAAAA);
        let n = 4 + 2 * rng.below(5);
        let base = random_outerplanar_instance(n, 0.4, seed).unwrap();
        let mut edges = base.graph.edges().to_vec();
        for _ in 0..1 + rng.below(3) {
            let e = rng.below(edges.len());
            edges.push(edges[e]);
        }
        let graph = Multigraph::new(n, edges).unwrap();
        let ms = match enumerate_perfect_matchings(&graph, 50_000) {
            Ok(list) if list.len() >= 2 => list,
            _ => continue,
        };
        let a = rng.below(ms.len());
        let b = rng.below(ms.len());
        let inst = SpmrInstance::new(
            graph,
            ms[a].ids().to_vec(),
            ms[b].ids().to_vec(),
            vec![(0..n).collect()],
        )
        .unwrap();
        if check(&inst) {
            checked += 1;
        }
    }
    println!("parallel-edge sweep: {checked} instances oracle-checked");
}

#[test]
fn instances_with_pendants_force_stripping() {
    // degree-1 pendants force their edges into every perfect matching, so the
    // big block's restriction leaves the anchor vertices uncovered
    let mut checked = 0u64;
    for seed in 0..600u64 {
        let mut rng = Rng::seeded(seed ^ 0xCCCC);
        let n = 6 + 2 * rng.below(5);
        let base = random_outerplanar_instance(n, 0.6, seed ^ 0x55).unwrap();
        let mut edges = base.graph.edges().to_vec();
        let x = rng.below(n);
        let y = (x + 1 + rng.below(n - 1)) % n;
        edges.push((x, n));
        edges.push((y, n + 1));
        let graph = Multigraph::new(n + 2, edges).unwrap();
        let ms = match enumerate_perfect_matchings(&graph, 50_000) {
            Ok(list) if list.len() >= 2 => list,
            _ => continue,
        };
        let a = rng.below(ms.len());
        let b = rng.below(ms.len());
        let inst =
            SpmrInstance::new(graph, ms[a].ids().to_vec(), ms[b].ids().to_vec(), vec![]).unwrap();
        if check(&inst) {
            checked += 1;
        }
    }
    println!("pendant sweep: {checked} instances oracle-checked");
}
