//! Generate a random instance, solve it, and cross-check the brute-force
//! oracle; prints the optimal flip sequence.

use matchflip::oracle::bfs_shortest;
use matchflip::solver::{random_outerplanar_instance, solve};

fn main() {
    let inst = random_outerplanar_instance(12, 0.5, 29).expect("valid parameters");
    println!(
        "instance: {} vertices, {} edges ({} chords)",
        inst.graph.vertex_count(),
        inst.graph.edge_count(),
        inst.graph.edge_count() - inst.graph.vertex_count()
    );
    println!("m = {:?}", inst.m.ids());
    println!("n = {:?}", inst.n.ids());

    let report = solve(&inst).expect("outerplanar instance");
    println!("optimum: {} flips", report.opt);
    for (i, cycle) in report.sequence.cycles.iter().enumerate() {
        println!("  flip {}: {:?}", i + 1, cycle.ids());
    }

    let (oracle_opt, _) = bfs_shortest(&inst.graph, &inst.m, &inst.n, 200_000).unwrap();
    assert_eq!(report.opt, oracle_opt);
    println!("oracle agrees: {oracle_opt}");
}
