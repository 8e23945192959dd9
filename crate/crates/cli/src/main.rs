//! `logform`: seeded instance generation, identity checks, stability
//! certificates, base-locus enumeration and Hilbert tables.
//!
//! Exit codes: 0 success, 1 a check or certificate failed, 2 malformed input.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
#[cfg(test)]
use clap::CommandFactory;
use logform::{DegreeVector, FieldSpec};

#[derive(Parser, Debug)]
#[command(name = "logform", version, about = "Exact computations with logarithmic one-forms on P^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Suppress the human-readable summary.
    #[arg(short, long, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a random instance and write it as JSON.
    Gen {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the identity suite on instance files or generated instances.
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare rank(dμ) with dim T(ω) on one or more instances.
    Certify {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the factorizations of a degree vector and the base-locus components.
    Baselocus {
        #[arg(long, value_parser = parse_degrees)]
        degrees: DegreeVector,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the Hilbert function of the codimension-two ideal with its resolution.
    Hilbert {
        #[command(flatten)]
        source: Source,
        /// Degree range `a..b` (inclusive) or a single degree; defaults to
        /// the five degrees starting at the smallest generator degree.
        #[arg(long, value_parser = parse_k_range)]
        k: Option<(u32, u32)>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct Shape {
    #[arg(long)]
    n: usize,
    /// Comma-separated degrees, sorted into nonincreasing order.
    #[arg(long, value_parser = parse_degrees)]
    degrees: DegreeVector,
    /// `rational` or `prime:P`.
    #[arg(long, default_value = "prime:2147483647")]
    field: FieldSpec,
}

#[derive(Args, Debug, Clone)]
struct Source {
    /// Instance JSON files; replaces generation.
    #[arg(long = "instance", conflicts_with_all = ["n", "degrees", "seed", "seeds"])]
    instances: Vec<PathBuf>,
    #[arg(long, required_unless_present = "instances")]
    n: Option<usize>,
    #[arg(long, value_parser = parse_degrees, required_unless_present = "instances")]
    degrees: Option<DegreeVector>,
    #[arg(long, default_value = "prime:2147483647")]
    field: FieldSpec,
    #[arg(long, conflicts_with = "seeds")]
    seed: Option<u64>,
    /// Comma-separated seeds.
    #[arg(long, value_delimiter = ',')]
    seeds: Vec<u64>,
}

fn parse_degrees(s: &str) -> Result<DegreeVector, String> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| format!("bad degree `{p}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    DegreeVector::normalized(parts).map_err(|e| e.to_string())
}

fn parse_k_range(s: &str) -> Result<(u32, u32), String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad degree `{t}`: {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let k = num(s)?;
            (k, k)
        }
    };
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::run(cli.command);
    match outcome {
        Ok(out) => {
            if !cli.quiet {
                for line in &out.summary {
                    if out.summary_to_stdout {
                        println!("{line}");
                    } else {
                        eprintln!("{line}");
                    }
                }
            }
            ExitCode::from(if out.success { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
