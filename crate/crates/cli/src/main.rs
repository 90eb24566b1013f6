use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use matchflip::error::Error;
use matchflip::msdd::{solve_msdd_bruteforce, solve_msdd_with_domain, DomainMode};
use matchflip::oracle::bfs_shortest;
use matchflip::reductions::{reduce_bipartite, reduce_planar, DirectedHcInstance,
                            PlanarHcInstance};
use matchflip::rng::Rng;
use matchflip::solver::{opt_value_only, random_outerplanar_instance, solve};

use matchflip_cli::format;
use matchflip_cli::report::ResultDocument;

/// Shortest perfect matching reconfiguration under alternating-cycle flips.
#[derive(Parser)]
#[command(name = "matchflip", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an outerplanar instance file exactly.
    Solve {
        path: PathBuf,
        /// Compute only the optimum, skipping sequence reconstruction.
        #[arg(long)]
        value_only: bool,
        /// Write the result document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-validate the emitted sequence before writing.
        #[arg(long)]
        seed_check: bool,
    },
    /// Exact answer by breadth-first search over all perfect matchings.
    Oracle {
        path: PathBuf,
        /// Cap on visited matchings.
        #[arg(long, default_value_t = 200_000)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate instance files.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Min-sum diameter decomposition of a tree file.
    Msdd {
        path: PathBuf,
        /// Cross-check against the exhaustive solver.
        #[arg(long)]
        brute: bool,
        /// Restrict the DP domain to realized distances.
        #[arg(long)]
        restricted: bool,
    },
    /// Batch runs: per-size timings, gap statistics, oracle agreement.
    Bench {
        /// Instance sizes (even vertex counts).
        #[arg(long, value_delimiter = ',', default_values_t = vec![8usize, 10, 12])]
        sizes: Vec<usize>,
        /// Instances per size.
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Time the value-only path and skip oracle agreement.
        #[arg(long)]
        value_only: bool,
        /// Cap on oracle states before an instance is skipped.
        #[arg(long, default_value_t = 200_000)]
        oracle_cap: usize,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Random 2-connected outerplanar instance with two sampled matchings.
    Outerplanar {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gadget instance from a 3-regular graph file (`p graph`, `e` lines).
    ReducePlanarHc {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gadget instance from a digraph file (`p digraph`, `a` lines).
    ReduceBipartiteDhc {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random tree file for the decomposition solver.
    MsddTree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest edge length.
        #[arg(long, default_value_t = 2)]
        max_len: u64,
        /// Probability that an edge is deletable.
        #[arg(long, default_value_t = 0.5)]
        deletable: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

/// 2 = bad input or parameters, 3 = outside the solvable class, 4 = a size
/// cap fired, 1 = internal invariant failure.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Input(_) | Error::Structure(_) => 2,
        Error::Domain(_) | Error::Degenerate(_) => 3,
        Error::Size(_) => 4,
        Error::Internal(_) => 1,
    }
}

fn run(cli: Cli) -> matchflip::error::Result<()> {
    match cli.cmd {
        Command::Solve { path, value_only, out, seed_check } => {
            let total = Instant::now();
            let inst = format::parse_instance(&read(&path)?)?;
            let solve_t = Instant::now();
            let doc = if value_only {
                let opt = opt_value_only(&inst)?;
                let solve_ms = ms(solve_t);
                println!("opt {opt} (value only, {solve_ms:.2} ms)");
                ResultDocument::value_only(opt, solve_ms, ms(total))
            } else {
                let report = solve(&inst)?;
                let solve_ms = ms(solve_t);
                if seed_check {
                    report.sequence.validate(&inst.graph)?;
                }
                println!(
                    "opt {} ({} blocks, {} flips, {solve_ms:.2} ms)",
                    report.opt,
                    report.blocks.len(),
                    report.sequence.len()
                );
                ResultDocument::from_report(&report, solve_ms, ms(total))
            };
            emit(&doc, out.as_deref())
        }
        Command::Oracle { path, cap, out } => {
            let total = Instant::now();
            let inst = format::parse_instance(&read(&path)?)?;
            let solve_t = Instant::now();
            let (opt, seq) = bfs_shortest(&inst.graph, &inst.m, &inst.n, cap)?;
            let solve_ms = ms(solve_t);
            println!("opt {opt} (oracle, {solve_ms:.2} ms)");
            emit(&ResultDocument::from_sequence(&seq, solve_ms, ms(total)), out.as_deref())
        }
        Command::Gen { kind } => generate(kind),
        Command::Msdd { path, brute, restricted } => {
            let inst = format::parse_tree(&read(&path)?)?;
            let mode = if restricted { DomainMode::Restricted } else { DomainMode::Full };
            let sol = solve_msdd_with_domain(&inst, mode);
            if brute {
                let reference = solve_msdd_bruteforce(&inst)?;
                if reference != sol {
                    return Err(Error::Internal(format!(
                        "DP {:?} disagrees with brute force {:?}",
                        sol, reference
                    )));
                }
                println!("objective {} (matches brute force)", sol.objective);
            } else {
                println!("objective {}", sol.objective);
            }
            println!("deleted {:?}", sol.deleted);
            Ok(())
        }
        Command::Bench { sizes, count, density, seed, value_only, oracle_cap } => {
            bench(&sizes, count, density, seed, value_only, oracle_cap)
        }
    }
}

fn generate(kind: GenKind) -> matchflip::error::Result<()> {
    match kind {
        GenKind::Outerplanar { n, density, seed, out } => {
            let inst = random_outerplanar_instance(n, density, seed)?;
            write_text(&format::render_instance(&inst), out.as_deref())
        }
        GenKind::ReducePlanarHc { path, out } => {
            let graph = format::parse_graph(&read(&path)?)?;
            let red = reduce_planar(&PlanarHcInstance::new(graph, None)?)?;
            write_text(&format::render_instance(&red.instance), out.as_deref())
        }
        GenKind::ReduceBipartiteDhc { path, out } => {
            let (n, arcs) = format::parse_digraph(&read(&path)?)?;
            let red = reduce_bipartite(&DirectedHcInstance::new(n, arcs)?)?;
            write_text(&format::render_instance(&red.instance), out.as_deref())
        }
        GenKind::MsddTree { n, seed, max_len, deletable, out } => {
            if n == 0 {
                return Err(Error::Input("need at least one vertex".into()));
            }
            if !(0.0..=1.0).contains(&deletable) {
                return Err(Error::Input(format!("deletable probability {deletable}")));
            }
            let mut rng = Rng::seeded(seed);
            let mut edges = Vec::new();
            for v in 1..n {
                edges.push((rng.below(v), v));
            }
            let tree = matchflip::graph::Multigraph::new(n, edges)?;
            let lengths: Vec<u64> =
                (0..n - 1).map(|_| rng.below(max_len as usize + 1) as u64).collect();
            let del: Vec<usize> = (0..n - 1).filter(|_| rng.chance(deletable)).collect();
            let inst = matchflip::msdd::MsddInstance::new(tree, del, lengths)?;
            write_text(&format::render_tree(&inst), out.as_deref())
        }
    }
}

fn bench(
    sizes: &[usize],
    count: usize,
    density: f64,
    seed: u64,
    value_only: bool,
    oracle_cap: usize,
) -> matchflip::error::Result<()> {
    println!("size instances median_ms gap_mean gap_max oracle_agree");
    for &n in sizes {
        if count == 0 {
            continue;
        }
        let mut times = Vec::new();
        let mut gaps: Vec<u64> = Vec::new();
        let mut agree = 0usize;
        let mut compared = 0usize;
        for i in 0..count {
            let inst =
                random_outerplanar_instance(n, density, seed + 7919 * (n as u64) + i as u64)?;
            let t = Instant::now();
            let opt = if value_only {
                let opt = opt_value_only(&inst)?;
                times.push(ms(t));
                opt
            } else {
                let report = solve(&inst)?;
                times.push(ms(t));
                gaps.extend(report.blocks.iter().filter_map(|b| b.gap));
                report.opt
            };
            if !value_only {
                match bfs_shortest(&inst.graph, &inst.m, &inst.n, oracle_cap) {
                    Ok((oracle_opt, _)) => {
                        compared += 1;
                        if oracle_opt == opt {
                            agree += 1;
                        }
                    }
                    Err(Error::Size(_)) => {}
                    Err(other) => return Err(other),
                }
            }
        }
        times.sort_by(f64::total_cmp);
        let median = times.get(times.len() / 2).copied().unwrap_or(0.0);
        let gap_mean = if gaps.is_empty() {
            0.0
        } else {
            gaps.iter().sum::<u64>() as f64 / gaps.len() as f64
        };
        let gap_max = gaps.iter().max().copied().unwrap_or(0);
        println!(
            "{n} {count} {median:.3} {gap_mean:.2} {gap_max} {agree}/{compared}"
        );
    }
    Ok(())
}

fn read(path: &std::path::Path) -> matchflip::error::Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_text(text: &str, out: Option<&std::path::Path>) -> matchflip::error::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(doc: &ResultDocument, out: Option<&std::path::Path>) -> matchflip::error::Result<()> {
    let json = serde_json::to_string_pretty(doc)
        .map_err(|e| Error::Internal(format!("serialization failed: {e}")))?;
    match out {
        Some(path) => std::fs::write(path, json.as_bytes())
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1000.0
}
