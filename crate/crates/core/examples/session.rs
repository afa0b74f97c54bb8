//! Runs a session from an inline JSON description and prints the report.

use ppeq::session::{run, RunOptions, SessionSpec};

const SPEC: &str = r#"{
  "G": "S3", "H": "S3", "p": 2,
  "block_a": "principal", "block_b": "principal",
  "gamma": [{"identity": true}],
  "tasks": [{"task": "blocks"}, {"task": "defect"}, {"task": "verify-ppeq"}]
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args().nth(1).map(std::fs::read_to_string).transpose()?.unwrap_or_else(|| SPEC.to_string());
    let spec = SessionSpec::parse(&text)?;
    let report = run(&spec, &RunOptions { seed: None, precision: None, jobs: 2 })?;
    println!("{}", report.to_json_string());
    println!("exit code {}", report.exit_code());
    Ok(())
}
