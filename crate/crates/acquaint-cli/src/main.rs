//! Command-line front end: generate graphs, synthesize and verify
//! strategies, solve small instances exactly, print bounds, benchmark.
//!
//! Exit codes: 0 success/verified, 1 verification failure, 2 input
//! error, 3 search budget exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use acquaint::{
    barbell_lower_bound, contour_bound, exact_ac, family, gnp_giant, max_degree, run, run_traced,
    synthesize_with, Error, ExactOptions, Family, Graph, PathRounds, Strategy, TreePolicy,
};

const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "acquaint", version, about = "Acquaintance strategies on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliFamily {
    Path,
    Cycle,
    Complete,
    Star,
    Barbell,
    /// Giant component of an Erdős–Rényi G(n, p) sample.
    Gnp,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and print it as JSON.
    Gen {
        family: CliFamily,
        /// Number of vertices (before giant-component extraction for gnp).
        n: usize,
        /// Edge probability; gnp only.
        p: Option<f64>,
        /// RNG seed; required for gnp.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Synthesize a verified strategy for a connected graph.
    Synth {
        /// Graph JSON file.
        graph: PathBuf,
        /// Root vertex for the spanning tree.
        #[arg(long, default_value_t = 0)]
        root: usize,
        /// Spanning tree construction: dfs or degree-greedy.
        #[arg(long, default_value = "dfs")]
        tree_policy: TreePolicy,
        /// Virtual rounds to emulate: n (always completes) or n-2
        /// (completion checked, not guaranteed).
        #[arg(long, default_value = "n")]
        path_rounds: PathRounds,
        /// Also write the strategy JSON to this file.
        #[arg(long)]
        strategy_out: Option<PathBuf>,
    },
    /// Run a strategy file against a graph file and report the outcome.
    Verify {
        graph: PathBuf,
        strategy: PathBuf,
        /// Stream per-round progress to stderr as JSON lines.
        #[arg(long)]
        trace: bool,
    },
    /// Exact minimum round count by exhaustive search (small graphs).
    Exact {
        graph: PathBuf,
        /// Abort after this many distinct search states.
        #[arg(long, default_value_t = 50_000_000)]
        max_states: u64,
        /// Disable domination pruning (same answer, more states).
        #[arg(long)]
        no_domination: bool,
    },
    /// Print the barbell lower-bound table, and the 20Δn bound when a
    /// degree is given.
    Bounds {
        n: usize,
        /// Maximum degree for the 20Δn upper bound.
        #[arg(long)]
        delta: Option<usize>,
    },
    /// Synthesize across a range of sizes and print one CSV row per trial.
    Bench {
        #[arg(long)]
        family: CliFamily,
        /// Sizes: comma-separated values and inclusive ranges, e.g.
        /// "8..64" or "50,100".
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        /// Edge probability for gnp (default 3/n).
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value = "dfs")]
        tree_policy: TreePolicy,
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Gen { family, n, p, seed } => cmd_gen(family, n, p, seed),
        Command::Synth {
            graph,
            root,
            tree_policy,
            path_rounds,
            strategy_out,
        } => cmd_synth(&graph, root, tree_policy, path_rounds, strategy_out.as_deref()),
        Command::Verify {
            graph,
            strategy,
            trace,
        } => cmd_verify(&graph, &strategy, trace),
        Command::Exact {
            graph,
            max_states,
            no_domination,
        } => cmd_exact(&graph, max_states, no_domination),
        Command::Bounds { n, delta } => cmd_bounds(n, delta),
        Command::Bench {
            family,
            sizes,
            seed,
            trials,
            p,
            tree_policy,
            root,
        } => cmd_bench(family, &sizes, seed, trials, p, tree_policy, root),
    }
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::InvalidMatching { .. } => EXIT_VERIFY_FAIL,
        _ => EXIT_INPUT,
    }
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))
}

fn cmd_gen(kind: CliFamily, n: usize, p: Option<f64>, seed: Option<u64>) -> ExitCode {
    let graph = match kind {
        CliFamily::Gnp => {
            let Some(p) = p else {
                return fail(EXIT_INPUT, "gnp requires an edge probability p");
            };
            if !(0.0..=1.0).contains(&p) {
                return fail(EXIT_INPUT, format!("p must be in [0, 1], got {p}"));
            }
            let Some(seed) = seed else {
                return fail(EXIT_INPUT, "gnp requires --seed");
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            gnp_giant(&mut rng, n, p)
        }
        deterministic => {
            if p.is_some() {
                return fail(EXIT_INPUT, "p only applies to gnp");
            }
            let kind = match deterministic {
                CliFamily::Path => Family::Path,
                CliFamily::Cycle => Family::Cycle,
                CliFamily::Complete => Family::Complete,
                CliFamily::Star => Family::Star,
                CliFamily::Barbell => Family::Barbell,
                CliFamily::Gnp => unreachable!(),
            };
            match family(kind, n) {
                Ok(g) => g,
                Err(e) => return fail(exit_code_for(&e), e),
            }
        }
    };
    println!("{}", serde_json::to_string(&graph).expect("graphs serialize"));
    ExitCode::SUCCESS
}

fn cmd_synth(
    graph_path: &Path,
    root: usize,
    tree_policy: TreePolicy,
    path_rounds: PathRounds,
    strategy_out: Option<&Path>,
) -> ExitCode {
    let graph: Graph = match load_json(graph_path) {
        Ok(g) => g,
        Err(msg) => return fail(EXIT_INPUT, msg),
    };
    let report = match synthesize_with(&graph, root, tree_policy, path_rounds) {
        Ok(r) => r,
        Err(e) => return fail(exit_code_for(&e), e),
    };
    if let Some(out) = strategy_out {
        let json = serde_json::to_string(&report.strategy).expect("strategies serialize");
        if let Err(e) = std::fs::write(out, json + "\n") {
            return fail(EXIT_INPUT, format!("cannot write {}: {e}", out.display()));
        }
    }
    println!("{}", serde_json::to_string(&report).expect("reports serialize"));
    if report.completion_round.is_some() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAIL)
    }
}

fn cmd_verify(graph_path: &Path, strategy_path: &Path, trace: bool) -> ExitCode {
    let graph: Graph = match load_json(graph_path) {
        Ok(g) => g,
        Err(msg) => return fail(EXIT_INPUT, msg),
    };
    let strategy: Strategy = match load_json(strategy_path) {
        Ok(s) => s,
        Err(msg) => return fail(EXIT_INPUT, msg),
    };
    let outcome = if trace {
        run_traced(&graph, &strategy).map(|(report, entries)| {
            for entry in &entries {
                let matching = strategy.rounds[entry.round - 1].edges();
                eprintln!(
                    "{}",
                    serde_json::json!({
                        "round": entry.round,
                        "matching": matching,
                        "new_pairs": entry.new_pairs,
                        "acquainted_pairs": entry.acquainted_pairs,
                    })
                );
            }
            report
        })
    } else {
        run(&graph, &strategy)
    };
    match outcome {
        Ok(report) => {
            println!("{}", serde_json::to_string(&report).expect("reports serialize"));
            if report.all_acquainted {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY_FAIL)
            }
        }
        Err(e @ Error::InvalidMatching { .. }) => {
            println!(
                "{}",
                serde_json::json!({ "valid": false, "error": e.to_string() })
            );
            ExitCode::from(EXIT_VERIFY_FAIL)
        }
        Err(e) => fail(exit_code_for(&e), e),
    }
}

fn cmd_exact(graph_path: &Path, max_states: u64, no_domination: bool) -> ExitCode {
    let graph: Graph = match load_json(graph_path) {
        Ok(g) => g,
        Err(msg) => return fail(EXIT_INPUT, msg),
    };
    let options = ExactOptions {
        max_states,
        domination_pruning: !no_domination,
    };
    match exact_ac(&graph, &options) {
        Ok(result) => {
            println!("{}", serde_json::to_string(&result).expect("results serialize"));
            ExitCode::SUCCESS
        }
        Err(Error::BudgetExceeded { states_explored }) => {
            println!(
                "{}",
                serde_json::json!({
                    "error": "budget exceeded",
                    "states_explored": states_explored,
                    "max_states": max_states,
                })
            );
            ExitCode::from(EXIT_BUDGET)
        }
        Err(e) => fail(exit_code_for(&e), e),
    }
}

fn cmd_bounds(n: usize, delta: Option<usize>) -> ExitCode {
    if n < 2 {
        return fail(EXIT_INPUT, format!("bounds need n >= 2, got {n}"));
    }
    let barbell = barbell_lower_bound(n);
    let mut doc = serde_json::json!({
        "barbell": serde_json::to_value(&barbell).expect("bounds serialize"),
        "n_pow_3_2": (n as f64).powf(1.5),
    });
    if let Some(delta) = delta {
        doc["contour"] = serde_json::json!({
            "delta": delta,
            "bound_20dn": contour_bound(n, delta),
        });
    }
    println!("{doc}");
    ExitCode::SUCCESS
}

fn cmd_bench(
    kind: CliFamily,
    sizes: &str,
    seed: u64,
    trials: u64,
    p: Option<f64>,
    tree_policy: TreePolicy,
    root: usize,
) -> ExitCode {
    let sizes = match parse_sizes(sizes) {
        Ok(s) => s,
        Err(msg) => return fail(EXIT_INPUT, msg),
    };
    println!("n,graph_max_degree,tree_max_degree,rounds_used,bound,completion_round");
    for &size in &sizes {
        for trial in 0..trials {
            let graph = match kind {
                CliFamily::Gnp => {
                    let p = p.unwrap_or(3.0 / size.max(1) as f64).clamp(0.0, 1.0);
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(((size as u64) << 32) | trial);
                    gnp_giant(&mut rng, size, p)
                }
                deterministic => {
                    let kind = match deterministic {
                        CliFamily::Path => Family::Path,
                        CliFamily::Cycle => Family::Cycle,
                        CliFamily::Complete => Family::Complete,
                        CliFamily::Star => Family::Star,
                        CliFamily::Barbell => Family::Barbell,
                        CliFamily::Gnp => unreachable!(),
                    };
                    match family(kind, size) {
                        Ok(g) => g,
                        Err(e) => return fail(exit_code_for(&e), e),
                    }
                }
            };
            let report = match synthesize_with(&graph, root, tree_policy, PathRounds::Full) {
                Ok(r) => r,
                Err(e) => return fail(exit_code_for(&e), e),
            };
            let completion = report
                .completion_round
                .map(|r| r.to_string())
                .unwrap_or_default();
            println!(
                "{},{},{},{},{},{}",
                graph.n(),
                max_degree(&graph),
                report.tree_max_degree,
                report.rounds_used,
                report.bound,
                completion
            );
        }
    }
    ExitCode::SUCCESS
}

fn parse_sizes(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if let Some((a, b)) = part.split_once("..") {
            let a: usize = a
                .trim()
                .parse()
                .map_err(|_| format!("bad size range `{part}`"))?;
            let b: usize = b
                .trim()
                .parse()
                .map_err(|_| format!("bad size range `{part}`"))?;
            if a > b {
                return Err(format!("empty size range `{part}`"));
            }
            out.extend(a..=b);
        } else {
            out.push(
                part.parse()
                    .map_err(|_| format!("bad size `{part}`"))?,
            );
        }
    }
    if out.is_empty() {
        return Err("no sizes given".into());
    }
    Ok(out)
}
