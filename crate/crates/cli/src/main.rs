//! `csf`: star-basis chromatic symmetric functions of forests from the
//! command line.
//!
//! Exit codes: 0 success, 1 property failure (failed verification suite,
//! census collision, unverifiable reconstruction), 2 malformed input.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use csf_core::analysis::adjacency_report;
use csf_core::dnc::{star_expand, star_expand_traced};
use csf_core::forest::enumerate_trees;
use csf_core::reconstruct::reconstruct;
use csf_core::suite::{conjecture_census, conjecture_census_persistent, env_max_n, run_suite};
use csf_core::{Basis, Forest, SymFunc};

#[derive(Parser)]
#[command(name = "csf", version, about = "Chromatic symmetric functions of forests in the star basis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Star,
    Power,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeFormat {
    Edges,
    Graph6,
}

#[derive(Subcommand)]
enum Command {
    /// Expand the CSF of a forest given as an edge list.
    Expand {
        /// Edge-list file, or '-' for stdin.
        input: PathBuf,
        #[arg(long, value_enum, default_value = "star")]
        basis: BasisArg,
        /// Write the full expansion tree as Graphviz DOT to this file.
        #[arg(long, value_name = "FILE")]
        trace: Option<PathBuf>,
        /// Emit the wire-format JSON instead of display text.
        #[arg(long)]
        json: bool,
    },
    /// Analyze a star-basis CSF (JSON): leading term, adjacency multisets, N(p).
    Analyze {
        /// SymFunc JSON file, or '-' for stdin.
        input: PathBuf,
    },
    /// Reconstruct a tree of diameter <= 5 from its star-basis CSF (JSON).
    Reconstruct {
        /// SymFunc JSON file, or '-' for stdin.
        input: PathBuf,
    },
    /// Run a verification suite over all trees up to a vertex bound.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Enumerate all trees on n vertices, one per isomorphism class.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "edges")]
        format: TreeFormat,
    },
    /// Group trees by star expansion and report CSF collisions.
    Census {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        /// Append-only JSONL store of computed expansions; reused on rerun.
        #[arg(long, value_name = "FILE")]
        store: Option<PathBuf>,
    },
}

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
    }
}

fn input_err(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn read_symfunc(path: &PathBuf) -> Result<SymFunc, String> {
    let text = read_input(path).map_err(|e| format!("{}: {e}", path.display()))?;
    SymFunc::from_json_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Expand { input, basis, trace, json } => {
            let text = match read_input(&input) {
                Ok(t) => t,
                Err(e) => return input_err(format_args!("{}: {e}", input.display())),
            };
            let forest = match Forest::parse_edge_list(&text) {
                Ok(f) => f,
                Err(e) => return input_err(format_args!("{}: {e}", input.display())),
            };
            let star = if let Some(dot_path) = trace {
                let (f, tr) = star_expand_traced(&forest);
                if let Err(e) = std::fs::write(&dot_path, tr.to_dot()) {
                    return input_err(format_args!("{}: {e}", dot_path.display()));
                }
                f
            } else {
                star_expand(&forest)
            };
            let out = match basis {
                BasisArg::Star => star,
                BasisArg::Power => star.to_power().expect("star basis converts"),
            };
            if json {
                println!("{}", out.to_json_string());
            } else {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Command::Analyze { input } => {
            let f = match read_symfunc(&input) {
                Ok(f) => f,
                Err(e) => return input_err(e),
            };
            let f = if f.basis() == Basis::Power {
                match f.to_star() {
                    Ok(f) => f,
                    Err(e) => return input_err(e),
                }
            } else {
                f
            };
            match adjacency_report(&f) {
                Ok(report) => {
                    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
                    ExitCode::SUCCESS
                }
                Err(e) => input_err(e),
            }
        }
        Command::Reconstruct { input } => {
            let f = match read_symfunc(&input) {
                Ok(f) => f,
                Err(e) => return input_err(e),
            };
            match reconstruct(&f) {
                Ok(r) => {
                    print!("{}", r.tree.to_edge_list());
                    println!(
                        "{}",
                        serde_json::json!({
                            "diameter_class": r.diameter_class,
                            "verified": r.verified,
                        })
                    );
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::Verify { suite, max_n, seed } => match run_suite(&suite, max_n, seed) {
            Ok(report) => {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
                eprintln!(
                    "suite {}: {} trees checked, {} failures in {:.2?}",
                    report.suite,
                    report.trees_checked,
                    report.failures.len(),
                    report.elapsed
                );
                if report.passed() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => input_err(e),
        },
        Command::Enumerate { n, format } => {
            if let Some(cap) = env_max_n() {
                if n > cap {
                    return input_err(format_args!("n {n} exceeds CSF_MAX_N={cap}"));
                }
            }
            for t in enumerate_trees(n) {
                match format {
                    TreeFormat::Edges => println!("{}---", t.to_edge_list()),
                    TreeFormat::Graph6 => match t.to_graph6() {
                        Ok(s) => println!("{s}"),
                        Err(e) => return input_err(e),
                    },
                }
            }
            ExitCode::SUCCESS
        }
        Command::Census { max_n, store } => {
            let report = match store {
                Some(path) => conjecture_census_persistent(max_n, &path),
                None => conjecture_census(max_n).map_err(|e| e.into()),
            };
            match report {
                Ok(report) => {
                    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
                    if report.passed() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => input_err(e),
            }
        }
    }
}
