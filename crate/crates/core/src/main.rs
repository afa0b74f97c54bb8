use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use ppeq::session::{run, RunOptions, SessionSpec, Status};
use ppeq::Error;

/// Runs a session file and writes a JSON report of verdicts.
#[derive(Parser)]
#[command(name = "ppeq", version)]
struct Args {
    /// Session file (JSON).
    #[arg(long)]
    session: PathBuf,
    /// Seed for randomized decompositions; overrides the session seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Lower bound for the p-adic precision of isotypy checks.
    #[arg(long)]
    precision: Option<u32>,
    /// Number of tasks run concurrently.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Report file; defaults to the session's output path, then stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Print one summary line per verdict on stderr.
    #[arg(long)]
    verbose: bool,
}

fn diagnostic(kind: &str, msg: &str) {
    println!("{}", serde_json::json!({"status": "error", "kind": kind, "message": msg}));
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.session) {
        Ok(t) => t,
        Err(e) => {
            diagnostic("parse", &format!("cannot read {}: {e}", args.session.display()));
            return ExitCode::from(2);
        }
    };
    let spec = match SessionSpec::parse(&text) {
        Ok(s) => s,
        Err(e) => {
            diagnostic("parse", &e.to_string());
            return ExitCode::from(2);
        }
    };
    let opts = RunOptions { seed: args.seed, precision: args.precision, jobs: args.jobs };
    let report = match run(&spec, &opts) {
        Ok(r) => r,
        Err(e @ (Error::Parse(_) | Error::UnknownCatalog(_) | Error::InvalidPermutation(_))) => {
            diagnostic("parse", &e.to_string());
            return ExitCode::from(2);
        }
        Err(e) => {
            diagnostic("precondition", &e.to_string());
            return ExitCode::from(3);
        }
    };
    if args.verbose {
        for v in &report.verdicts {
            let s = match v.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Error => "ERROR",
            };
            eprintln!("{:<18} {:<5} {} ms", v.theorem, s, v.timing_ms);
        }
    }
    let out = report.to_json_string();
    let path = args.report.or(spec.output.map(PathBuf::from));
    match path {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, out + "\n") {
                diagnostic("io", &format!("cannot write {}: {e}", p.display()));
                return ExitCode::from(3);
            }
        }
        None => println!("{out}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
