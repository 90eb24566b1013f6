//! End-to-end runs of the `matchflip` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use matchflip_cli::format::parse_instance;
use matchflip_cli::report::ResultDocument;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_matchflip"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("matchflip-test-{}-{name}", std::process::id()));
    p
}

const OCTAGON: &str = "c octagon with chords 0-3 and 4-7\n\
p pmr 8 10\n\
e 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 7\ne 7 0\ne 0 3\ne 4 7\n\
m 4 0 2 4 6\n\
n 4 1 5 8 9\n\
o 0 1 2 3 4 5 6 7\n";

const C4: &str = "p pmr 4 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\nm 2 0 2\nn 2 1 3\n";

const K4: &str = "p pmr 4 6\n\
e 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n\
m 2 0 5\nn 2 1 4\n";

#[test]
fn solve_octagon_and_replay() {
    let input = scratch("octagon.pmr");
    let out = scratch("octagon.json");
    std::fs::write(&input, OCTAGON).unwrap();
    let res = run(&[
        "solve",
        input.to_str().unwrap(),
        "--seed-check",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(res.status.success(), "{res:?}");
    assert!(stdout(&res).contains("opt 2"));

    let doc: ResultDocument =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc.opt, 2);
    assert_eq!(doc.cycles.len(), 2);
    assert_eq!(doc.blocks.len(), 1);
    assert_eq!(doc.blocks[0].gap, Some(4));
    let inst = parse_instance(OCTAGON).unwrap();
    doc.replay(&inst.graph).unwrap();
    assert_eq!(doc.matchings.last().unwrap(), &inst.n.ids().to_vec());
}

#[test]
fn solve_value_only() {
    let input = scratch("vo.pmr");
    std::fs::write(&input, OCTAGON).unwrap();
    let res = run(&["solve", input.to_str().unwrap(), "--value-only"]);
    assert!(res.status.success());
    assert!(stdout(&res).contains("opt 2"));
}

#[test]
fn solve_equal_matchings() {
    let text = "p pmr 4 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\nm 2 0 2\nn 2 0 2\n";
    let input = scratch("same.pmr");
    std::fs::write(&input, text).unwrap();
    let res = run(&["solve", input.to_str().unwrap()]);
    assert!(res.status.success());
    assert!(stdout(&res).contains("opt 0"));
    let doc: ResultDocument = serde_json::from_str(
        stdout(&res).split_once('\n').unwrap().1,
    )
    .unwrap();
    assert!(doc.cycles.is_empty());
}

#[test]
fn solve_rejects_non_outerplanar_with_exit_3() {
    let input = scratch("k4.pmr");
    std::fs::write(&input, K4).unwrap();
    let res = run(&["solve", input.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(3), "{res:?}");
}

#[test]
fn parse_errors_exit_2() {
    let input = scratch("broken.pmr");
    std::fs::write(&input, "p pmr 2 1\ne 0 1\nm 1 0\n").unwrap();
    let res = run(&["solve", input.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));

    let res = run(&["solve", "/no/such/file.pmr"]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn oracle_matches_solver() {
    let input = scratch("c4.pmr");
    std::fs::write(&input, C4).unwrap();
    let res = run(&["oracle", input.to_str().unwrap()]);
    assert!(res.status.success());
    assert!(stdout(&res).contains("opt 1"));

    let octagon = scratch("octagon-oracle.pmr");
    std::fs::write(&octagon, OCTAGON).unwrap();
    let res = run(&["oracle", octagon.to_str().unwrap()]);
    assert!(stdout(&res).contains("opt 2"));
}

#[test]
fn oracle_cap_exits_4() {
    let input = scratch("cap.pmr");
    std::fs::write(&input, OCTAGON).unwrap();
    let res = run(&["oracle", input.to_str().unwrap(), "--cap", "2"]);
    assert_eq!(res.status.code(), Some(4));
}

#[test]
fn gen_outerplanar_is_byte_identical_per_seed() {
    let a = run(&["gen", "outerplanar", "--n", "12", "--density", "0.4", "--seed", "7"]);
    let b = run(&["gen", "outerplanar", "--n", "12", "--density", "0.4", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["gen", "outerplanar", "--n", "12", "--density", "0.4", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);

    // generated text parses back and solves
    let inst = parse_instance(&stdout(&a)).unwrap();
    assert_eq!(inst.graph.vertex_count(), 12);
}

#[test]
fn gen_reductions_have_documented_sizes() {
    let graph = scratch("k4.graph");
    std::fs::write(&graph, "p graph 4 6\ne 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n").unwrap();
    let res = run(&["gen", "reduce-planar-hc", graph.to_str().unwrap()]);
    assert!(res.status.success());
    let inst = parse_instance(&stdout(&res)).unwrap();
    assert_eq!(inst.graph.vertex_count(), 8 * 4 + 2 * 6);

    let digraph = scratch("tri.digraph");
    std::fs::write(&digraph, "p digraph 3 3\na 0 1\na 1 2\na 2 0\n").unwrap();
    let res = run(&["gen", "reduce-bipartite-dhc", digraph.to_str().unwrap()]);
    assert!(res.status.success());
    let inst = parse_instance(&stdout(&res)).unwrap();
    assert_eq!(inst.graph.vertex_count(), 24);

    // a non-3-regular source is an input error
    let bad = scratch("path.graph");
    std::fs::write(&bad, "p graph 3 2\ne 0 1\ne 1 2\n").unwrap();
    let res = run(&["gen", "reduce-planar-hc", bad.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn msdd_subcommand() {
    let two = scratch("two.tree");
    std::fs::write(&two, "p tree 2\nt 0 1 5 1\n").unwrap();
    let res = run(&["msdd", two.to_str().unwrap()]);
    assert!(res.status.success());
    let text = stdout(&res);
    assert!(text.contains("objective 0"));
    assert!(text.contains("deleted [0]"));

    // nothing deletable: the objective is the diameter
    let fixed = scratch("fixed.tree");
    std::fs::write(&fixed, "p tree 3\nt 0 1 2 0\nt 1 2 3 0\n").unwrap();
    let res = run(&["msdd", fixed.to_str().unwrap()]);
    assert!(stdout(&res).contains("objective 5"));

    // generated tree: DP agrees with brute force, restricted domain too
    let tree = scratch("gen.tree");
    let gen = run(&[
        "gen", "msdd-tree", "--n", "9", "--seed", "3", "--out",
        tree.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    let res = run(&["msdd", tree.to_str().unwrap(), "--brute"]);
    assert!(stdout(&res).contains("matches brute force"));
    let full = run(&["msdd", tree.to_str().unwrap()]);
    let restricted = run(&["msdd", tree.to_str().unwrap(), "--restricted"]);
    assert_eq!(full.stdout, restricted.stdout);

    let not_tree = scratch("cycle.tree");
    std::fs::write(&not_tree, "p tree 2\nt 0 1 1 0\nt 0 1 1 0\n").unwrap();
    let res = run(&["msdd", not_tree.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn bench_reports_agreement() {
    let res = run(&["bench", "--sizes", "6,8", "--count", "4", "--seed", "5"]);
    assert!(res.status.success());
    let text = stdout(&res);
    assert!(text.contains("size instances median_ms"));
    assert!(text.contains("4/4"), "oracle agreement missing: {text}");

    let empty = run(&["bench", "--count", "0"]);
    assert!(empty.status.success());
    assert_eq!(stdout(&empty).lines().count(), 1);

    // the value-only path handles large instances within the time budget
    let big = run(&["bench", "--sizes", "300", "--count", "1", "--value-only"]);
    assert!(big.status.success());
    assert!(stdout(&big).contains("300 1"));
}
