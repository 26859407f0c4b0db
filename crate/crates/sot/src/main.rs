//! Thin CLI over the config-driven harness.
//!
//! ```text
//! sot <command> --config <path> [--seed N] [--out <path>] [--csv <path>]
//! ```
//!
//! Exit codes: 0 ok, 1 config/io error, 2 golden mismatch.

use std::process::ExitCode;

use sot::error::Error;
use sot::harness::{emit_csv, parse_config, run, ExperimentConfig};

const USAGE: &str = "usage: sot <command> --config <path> [--seed N] [--out <path>] [--csv <path>]
commands: eval maxima equioscillate minimax maximin compare search lemma-check golden
  --config <path>  JSON experiment description (optional for `golden`)
  --seed N         overrides the config seed (SOT_SEED env var also works)
  --out <path>     overrides the config output path
  --csv <path>     additionally writes a flat CSV projection of the records";

struct CliArgs {
    command: String,
    config_path: Option<String>,
    seed: Option<u64>,
    out: Option<String>,
    csv: Option<String>,
}

fn parse_args(mut args: std::env::Args) -> Result<CliArgs, String> {
    args.next();
    let command = args.next().ok_or_else(|| USAGE.to_string())?;
    if command == "--help" || command == "-h" || command == "help" {
        return Err(USAGE.to_string());
    }
    let mut parsed = CliArgs {
        command,
        config_path: None,
        seed: None,
        out: None,
        csv: None,
    };
    while let Some(flag) = args.next() {
        let mut value_for = |flag: &str| {
            args.next()
                .ok_or_else(|| format!("{flag} needs a value\n{USAGE}"))
        };
        match flag.as_str() {
            "--config" => parsed.config_path = Some(value_for("--config")?),
            "--seed" => {
                let raw = value_for("--seed")?;
                parsed.seed = Some(
                    raw.parse()
                        .map_err(|_| format!("--seed must be an unsigned integer, got {raw}"))?,
                );
            }
            "--out" => parsed.out = Some(value_for("--out")?),
            "--csv" => parsed.csv = Some(value_for("--csv")?),
            other => return Err(format!("unknown flag {other}\n{USAGE}")),
        }
    }
    Ok(parsed)
}

fn load_config(cli: &CliArgs) -> Result<ExperimentConfig, Error> {
    let text = match &cli.config_path {
        Some(path) => std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.into(),
            source,
        })?,
        // `golden` runs without a config file.
        None if cli.command == "golden" => r#"{"command":"golden"}"#.to_string(),
        None => return Err(Error::Config("--config <path> is required".into())),
    };
    let mut config = parse_config(&text)?;
    if config.command.name() != cli.command {
        return Err(Error::Config(format!(
            "config declares command {:?} but the CLI asked for {:?}",
            config.command.name(),
            cli.command
        )));
    }
    // Seed precedence: --seed, then SOT_SEED, then the config.
    if let Some(seed) = cli.seed {
        config.seed = Some(seed);
    } else if let Ok(raw) = std::env::var("SOT_SEED") {
        let seed = raw
            .parse()
            .map_err(|_| Error::Config(format!("SOT_SEED must be an unsigned integer, got {raw}")))?;
        config.seed = Some(seed);
    }
    if cli.out.is_some() {
        config.output_path = cli.out.clone();
    }
    Ok(config)
}

fn main() -> ExitCode {
    let cli = match parse_args(std::env::args()) {
        Ok(cli) => cli,
        Err(message) => {
            eprintln!("{message}");
            return ExitCode::from(1);
        }
    };

    let config = match load_config(&cli) {
        Ok(config) => config,
        Err(e) => {
            eprintln!("sot: {e}");
            return ExitCode::from(1);
        }
    };

    match run(&config) {
        Ok(summary) => {
            if let Some(path) = &summary.written_to {
                eprintln!(
                    "sot: wrote {} record(s) to {}",
                    summary.records.len(),
                    path.display()
                );
            } else {
                use std::io::Write as _;
                let stdout = std::io::stdout();
                let mut out = stdout.lock();
                for record in &summary.records {
                    // A closed pipe downstream is not an error.
                    if writeln!(out, "{}", record.to_json_line()).is_err() {
                        break;
                    }
                }
            }
            if let Some(csv_path) = &cli.csv {
                match emit_csv(&summary.records, &[]) {
                    Ok(text) => {
                        if let Err(e) = std::fs::write(csv_path, text) {
                            eprintln!("sot: cannot write {csv_path}: {e}");
                            return ExitCode::from(1);
                        }
                    }
                    Err(e) => {
                        eprintln!("sot: {e}");
                        return ExitCode::from(1);
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Err(Error::GoldenMismatch(failures)) => {
            for failure in &failures {
                eprintln!("sot: golden mismatch: {failure}");
            }
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("sot: {e}");
            ExitCode::from(1)
        }
    }
}
