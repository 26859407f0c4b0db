//! Drive the harness from a JSON config, the same way the `sot` binary
//! does, and flatten the records to CSV.
//!
//! Run with: cargo run --example run_config

use sot::harness::{config_digest, emit_csv, parse_config, run};

const CONFIG: &str = r#"{
  "command": "maxima",
  "instance": {
    "kernel": { "family": "log" },
    "weights": [1.0],
    "field": {
      "breakpoints": [0.0, 0.6666666666666666, 1.0],
      "pieces": [ { "kind": "neg_infinity" }, { "kind": "constant", "value": 0.0 } ],
      "point_values": ["-inf", 0.0, 0.0]
    }
  },
  "nodes": [0.6666666666666666]
}"#;

fn main() -> sot::Result<()> {
    let config = parse_config(CONFIG)?;
    println!("config digest: {}", config_digest(&config));

    let summary = run(&config)?;
    for record in &summary.records {
        println!("{}", record.to_json_line());
    }

    let csv = emit_csv(&summary.records, &["j".into(), "m".into(), "argmax".into()])?;
    println!("\nCSV projection:\n{csv}");
    Ok(())
}
