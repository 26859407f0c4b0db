//! Config-driven experiment runner.
//!
//! [`parse_config`] validates a JSON experiment description, [`run`] executes
//! it and writes JSONL records to the configured output path, and
//! [`emit_csv`] flattens records for plotting. Identical config and seed
//! produce byte-identical output.

mod config;
mod csv;
mod golden;
mod record;

pub use config::{canonical_config, config_digest, parse_config, CommandConfig, ExperimentConfig};
pub use csv::emit_csv;
pub use golden::{reference_level_nodes, reference_level_value, run_golden_suite, GoldenCheck};
pub use record::{Payload, ResultRecord, SCHEMA_VERSION};

use std::io::Write;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::intertwining::{compare_maxima, search_majorization};
use crate::lemma::check_widening_part;
use crate::solvers::{find_equioscillation, maximize_min, minimize_max};
use crate::translates::{f_pure, f_weighted, interval_maxima};

/// Everything a run produced.
#[derive(Debug)]
pub struct RunSummary {
    pub records: Vec<ResultRecord>,
    pub written_to: Option<PathBuf>,
}

/// Executes a config and writes one JSONL record per result to
/// `output_path` (when set). Golden mismatches write their records first and
/// then error, so the caller can map them to a distinct exit code.
pub fn run(config: &ExperimentConfig) -> Result<RunSummary> {
    let digest = config_digest(config);
    let seed = config.effective_seed();
    let mut records = Vec::new();
    let mut golden_failures = Vec::new();

    match &config.command {
        CommandConfig::Eval { instance, nodes, t } => {
            let field = instance.field().eval(*t)?;
            let pure_sum = f_pure(instance, nodes, *t)?;
            let total = f_weighted(instance, nodes, *t)?;
            records.push(ResultRecord::new(
                &digest,
                seed,
                Payload::Eval {
                    t: *t,
                    field,
                    pure_sum,
                    total,
                },
            ));
        }
        CommandConfig::Maxima {
            instance,
            nodes,
            tol,
        } => {
            let mv = interval_maxima(instance, nodes, *tol)?;
            records.push(ResultRecord::new(&digest, seed, Payload::from_maxima(&mv)));
        }
        CommandConfig::Equioscillate { instance, options } => {
            let mut options = *options;
            options.rng_seed = seed;
            let result = find_equioscillation(instance, &options)?;
            records.push(ResultRecord::new(&digest, seed, Payload::from_solve(&result)));
        }
        CommandConfig::Minimax { instance, options } => {
            let mut options = *options;
            options.rng_seed = seed;
            let result = minimize_max(instance, &options)?;
            records.push(ResultRecord::new(&digest, seed, Payload::from_solve(&result)));
        }
        CommandConfig::Maximin { instance, options } => {
            let mut options = *options;
            options.rng_seed = seed;
            let result = maximize_min(instance, &options)?;
            records.push(ResultRecord::new(&digest, seed, Payload::from_solve(&result)));
        }
        CommandConfig::Compare {
            instance,
            x,
            y,
            value_tol,
        } => {
            let cmp = compare_maxima(instance, x, y, *value_tol)?;
            records.push(ResultRecord::new(
                &digest,
                seed,
                Payload::Compare {
                    relation: cmp.relation,
                    witness_up: cmp.witness_up,
                    witness_down: cmp.witness_down,
                    margins: cmp.margins,
                },
            ));
        }
        CommandConfig::Search { instance, options } => {
            let mut options = *options;
            options.rng_seed = seed;
            let report = search_majorization(instance, &options)?;
            for event in &report.improvements {
                records.push(ResultRecord::new(
                    &digest,
                    seed,
                    Payload::SearchEvent {
                        worker: event.worker,
                        pair_index: event.pair_index,
                        margin: event.margin,
                        x: event.x.clone(),
                        y: event.y.clone(),
                    },
                ));
            }
            records.push(ResultRecord::new(
                &digest,
                seed,
                Payload::from_search_report(&report),
            ));
        }
        CommandConfig::LemmaCheck {
            kernel,
            params,
            part,
            grid,
        } => {
            let report = check_widening_part(kernel, params, *part, *grid)?;
            records.push(ResultRecord::new(
                &digest,
                seed,
                Payload::Lemma {
                    part: *part,
                    kappa: params.kappa().ok(),
                    checked: report.checked,
                    violations: report.violations.clone(),
                    min_margin: report.min_margin,
                    midpoint_margins: report.midpoint_margins.clone(),
                    strict_interior: report.strict_interior,
                    passed: report.passed(),
                },
            ));
        }
        CommandConfig::Golden => {
            for check in run_golden_suite() {
                if !check.passed {
                    golden_failures.push(format!("{}: {}", check.name, check.detail));
                }
                records.push(ResultRecord::new(
                    &digest,
                    seed,
                    Payload::Golden {
                        name: check.name,
                        passed: check.passed,
                        detail: check.detail,
                    },
                ));
            }
        }
    }

    let written_to = match &config.output_path {
        Some(path) => {
            let path = PathBuf::from(path);
            write_jsonl(&path, &records)?;
            Some(path)
        }
        None => None,
    };

    if !golden_failures.is_empty() {
        return Err(Error::GoldenMismatch(golden_failures));
    }
    Ok(RunSummary {
        records,
        written_to,
    })
}

fn write_jsonl(path: &PathBuf, records: &[ResultRecord]) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.clone(),
        source,
    };
    let mut file = std::fs::File::create(path).map_err(io_err)?;
    for record in records {
        file.write_all(record.to_json_line().as_bytes())
            .map_err(io_err)?;
        file.write_all(b"\n").map_err(io_err)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_command_produces_one_record() {
        let config = parse_config(
            r#"{"command":"eval",
                "instance":{"kernel":{"family":"log"},"weights":[1.0,1.0]},
                "nodes":[0.3,0.7],
                "t":0.5}"#,
        )
        .unwrap();
        let summary = run(&config).unwrap();
        assert_eq!(summary.records.len(), 1);
        match &summary.records[0].payload {
            Payload::Eval { total, .. } => {
                assert!((total.unwrap_finite() - 0.04f64.ln()).abs() < 1e-12);
            }
            other => panic!("unexpected payload {other:?}"),
        }
    }

    #[test]
    fn golden_command_succeeds() {
        let config = parse_config(r#"{"command":"golden"}"#).unwrap();
        let summary = run(&config).unwrap();
        assert!(summary.records.len() >= 10);
        assert!(summary
            .records
            .iter()
            .all(|r| matches!(&r.payload, Payload::Golden { passed: true, .. })));
    }

    #[test]
    fn equioscillate_payload_matches_reference() {
        let config = parse_config(
            r#"{"command":"equioscillate",
                "instance":{"kernel":{"family":"log"},"weights":[1.0,1.0]}}"#,
        )
        .unwrap();
        let summary = run(&config).unwrap();
        match &summary.records[0].payload {
            Payload::Solve { nodes, .. } => {
                let reference = reference_level_nodes(2);
                for (got, want) in nodes.iter().zip(&reference) {
                    assert!((got - want).abs() < 1e-6);
                }
            }
            other => panic!("unexpected payload {other:?}"),
        }
    }

    #[test]
    fn identical_config_and_seed_give_identical_payload_bytes() {
        let text = r#"{"command":"search",
            "instance":{"kernel":{"family":"log"},"weights":[1.0,1.0]},
            "options":{"budget":200},
            "seed":5}"#;
        let config = parse_config(text).unwrap();
        let a = run(&config).unwrap();
        let b = run(&config).unwrap();
        let lines_a: Vec<String> = a.records.iter().map(|r| r.to_json_line()).collect();
        let lines_b: Vec<String> = b.records.iter().map(|r| r.to_json_line()).collect();
        assert_eq!(lines_a, lines_b);
    }

    #[test]
    fn search_records_end_with_report() {
        let config = parse_config(
            r#"{"command":"search",
                "instance":{"kernel":{"family":"log"},"weights":[1.0,1.0]},
                "options":{"budget":100}}"#,
        )
        .unwrap();
        let summary = run(&config).unwrap();
        assert!(matches!(
            summary.records.last().unwrap().payload,
            Payload::SearchReport { .. }
        ));
    }

    #[test]
    fn output_file_gets_written() {
        let dir = std::env::temp_dir().join("sot_harness_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("eval.jsonl");
        let text = format!(
            r#"{{"command":"eval",
                "instance":{{"kernel":{{"family":"log"}},"weights":[1.0]}},
                "nodes":[0.5],
                "t":0.25,
                "output_path":{path:?}}}"#,
        );
        let config = parse_config(&text).unwrap();
        let summary = run(&config).unwrap();
        assert_eq!(summary.written_to.as_deref(), Some(path.as_path()));
        let contents = std::fs::read_to_string(&path).unwrap();
        assert_eq!(contents.lines().count(), 1);
        std::fs::remove_file(&path).ok();
    }
}
