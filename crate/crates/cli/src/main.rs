//! `mapdeg` -- mapping-degree finiteness decisions and witness certificates
//! for closed oriented 3-manifold targets.
//!
//! Exit codes: 0 success, 1 internal error, 2 input error (expression or
//! flag), 3 no witness exists (blocked by finite-degree factors).

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use report::{
    batch_line_report, check_report, classify_report, decide_report, human, human_summary,
    witness_report, BatchSummary, Report, SUMMARY_SCHEMA,
};

#[derive(Parser)]
#[command(
    name = "mapdeg",
    version,
    about = "Decide mapping-degree finiteness for 3-manifold targets and emit witness certificates",
    after_help = "Expressions are connected sums of prime pieces, e.g.\n  \
                  mapdeg decide \"lens(5,1) # S2xS1\"\n  \
                  mapdeg witness \"tb[[1,0],[0,1]]\" --l 0..2 --json\n\
                  See README.md for the full piece grammar."
)]
struct Cli {
    /// Emit machine-readable JSON (one object per report) on stdout.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an expression and classify each prime factor.
    Classify {
        /// Connected-sum expression, e.g. "lens(5,1) # S2xS1".
        expr: String,
        /// Also list the first K members of each factor's degree family.
        #[arg(long, value_name = "K")]
        max_enum: Option<usize>,
    },
    /// Decide both finiteness questions for a target.
    Decide { expr: String },
    /// Emit the witness package: degrees (B*l+1)^4 + 1 with certificates.
    Witness {
        expr: String,
        /// Inclusive range of sample parameters l, e.g. "-2..3".
        #[arg(
            long,
            value_name = "A..B",
            default_value = "0..4",
            allow_hyphen_values = true
        )]
        l: String,
    },
    /// Check a candidate degree against the four forms and per-factor families.
    Check {
        expr: String,
        /// Candidate degree (arbitrary precision, may be negative).
        #[arg(long, value_name = "D", allow_hyphen_values = true)]
        degree: String,
    },
    /// Process a corpus file: one expression per line, "--" lines are comments.
    Batch { path: PathBuf },
}

fn emit(report: &Report, json: bool, is_error: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string(report).expect("reports always serialize")
        );
    } else if is_error {
        eprint!("{}", human(report));
    } else {
        print!("{}", human(report));
    }
}

fn parse_l_range(text: &str) -> Result<Vec<BigInt>, String> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| format!("expected an inclusive range like \"0..4\", got \"{text}\""))?;
    let start: i64 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad range start \"{a}\""))?;
    let end: i64 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad range end \"{b}\""))?;
    if start > end {
        return Err(format!("empty range {start}..{end}"));
    }
    if end - start >= 10_000 {
        return Err("range too large (at most 10000 samples)".to_string());
    }
    Ok((start..=end).map(BigInt::from).collect())
}

fn run_batch(path: &Path, json: bool) -> u8 {
    let bytes = match std::fs::read(path) {
        Ok(bytes) => bytes,
        Err(err) => {
            eprintln!("error: cannot read {}: {err}", path.display());
            return 2;
        }
    };
    let text = String::from_utf8_lossy(&bytes);
    let mut summary = BatchSummary {
        schema: SUMMARY_SCHEMA,
        lines: 0,
        exists_infinite_true: 0,
        exists_infinite_false: 0,
        parse_errors: 0,
    };
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with("--") {
            continue;
        }
        summary.lines += 1;
        let report = batch_line_report(line);
        if report.error.is_some() {
            summary.parse_errors += 1;
        } else if let Some(decision) = &report.decision {
            if decision.exists_infinite {
                summary.exists_infinite_true += 1;
            } else {
                summary.exists_infinite_false += 1;
            }
        }
        if json {
            println!(
                "{}",
                serde_json::to_string(&report).expect("reports always serialize")
            );
        } else {
            print!("{}", human(&report));
            println!();
        }
    }
    if json {
        println!(
            "{}",
            serde_json::to_string(&summary).expect("summaries always serialize")
        );
    } else {
        print!("{}", human_summary(&summary));
    }
    0
}

fn run(cli: Cli) -> u8 {
    let (report, code) = match cli.command {
        Command::Classify { expr, max_enum } => classify_report(&expr, max_enum),
        Command::Decide { expr } => decide_report(&expr),
        Command::Witness { expr, l } => {
            let l_values = match parse_l_range(&l) {
                Ok(values) => values,
                Err(message) => {
                    eprintln!("error: {message}");
                    return 2;
                }
            };
            witness_report(&expr, &l_values)
        }
        Command::Check { expr, degree } => {
            let degree: BigInt = match degree.trim().parse() {
                Ok(value) => value,
                Err(_) => {
                    eprintln!("error: --degree expects an integer, got \"{degree}\"");
                    return 2;
                }
            };
            check_report(&expr, &degree)
        }
        Command::Batch { path } => return run_batch(&path, cli.json),
    };
    emit(&report, cli.json, code == 2);
    code
}

fn main() -> ExitCode {
    ExitCode::from(run(Cli::parse()))
}
