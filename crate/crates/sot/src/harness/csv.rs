//! Flat CSV projection of result records, for plotting.
//!
//! Floats print as the shortest decimal that round-trips; `-∞` prints as the
//! literal token `-inf`. Vector-valued cells join their entries with single
//! spaces so rows stay comma-safe.

use crate::error::{Error, Result};
use crate::ext_real::ExtReal;
use crate::intertwining::CoordDelta;

use super::record::{Payload, ResultRecord};

fn float_cell(v: f64) -> String {
    format!("{v}")
}

fn ext_cell(v: ExtReal) -> String {
    v.to_string()
}

fn opt_float_cell(v: Option<f64>) -> String {
    v.map(float_cell).unwrap_or_default()
}

fn vec_cell(v: &[f64]) -> String {
    v.iter()
        .map(|x| format!("{x}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn delta_cell(d: &CoordDelta) -> String {
    match d {
        CoordDelta::Finite(v) => float_cell(*v),
        CoordDelta::PlusInfinite => "inf".into(),
        CoordDelta::MinusInfinite => "-inf".into(),
        CoordDelta::NegInfTie => "tie".into(),
    }
}

fn quote(cell: &str) -> String {
    if cell.contains(',') || cell.contains('"') || cell.contains('\n') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

/// The serde token of a unit-variant enum, so CSV and JSON columns agree.
fn token_cell<T: serde::Serialize>(value: &T) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        other => format!("{other:?}"),
    }
}

/// Default column set per payload kind.
fn default_columns(kind: &str) -> &'static [&'static str] {
    match kind {
        "eval" => &["t", "field", "pure_sum", "total"],
        "maxima" => &["j", "m", "argmax"],
        "solve" => &["j", "node", "value", "residual", "status", "evaluations"],
        "compare" => &["j", "delta", "relation"],
        "search_event" => &["worker", "pair_index", "margin", "x", "y"],
        "search_report" => &[
            "verdict",
            "pairs_evaluated",
            "best_margin",
            "out_of_hypothesis",
            "reverified",
        ],
        "lemma" => &[
            "part",
            "checked",
            "violations",
            "min_margin",
            "strict_interior",
            "passed",
        ],
        "golden" => &["name", "passed", "detail"],
        _ => &[],
    }
}

/// Rows for one record: a map from column name to cell text.
fn rows_of(payload: &Payload) -> Vec<Vec<(&'static str, String)>> {
    match payload {
        Payload::Eval {
            t,
            field,
            pure_sum,
            total,
        } => vec![vec![
            ("t", float_cell(*t)),
            ("field", ext_cell(*field)),
            ("pure_sum", ext_cell(*pure_sum)),
            ("total", ext_cell(*total)),
        ]],
        Payload::Maxima {
            m,
            argmax,
            regular,
            m_bar,
            m_under,
        } => m
            .iter()
            .zip(argmax)
            .enumerate()
            .map(|(j, (mj, aj))| {
                vec![
                    ("j", j.to_string()),
                    ("m", ext_cell(*mj)),
                    ("argmax", opt_float_cell(*aj)),
                    ("regular", regular.to_string()),
                    ("m_bar", ext_cell(*m_bar)),
                    ("m_under", ext_cell(*m_under)),
                ]
            })
            .collect(),
        Payload::Solve {
            nodes,
            value,
            residual,
            status,
            evaluations,
        } => nodes
            .iter()
            .enumerate()
            .map(|(j, node)| {
                vec![
                    ("j", (j + 1).to_string()),
                    ("node", float_cell(*node)),
                    ("value", ext_cell(*value)),
                    ("residual", opt_float_cell(*residual)),
                    ("status", token_cell(status)),
                    ("evaluations", evaluations.to_string()),
                ]
            })
            .collect(),
        Payload::Compare {
            relation, margins, ..
        } => margins
            .iter()
            .enumerate()
            .map(|(j, delta)| {
                vec![
                    ("j", j.to_string()),
                    ("delta", delta_cell(delta)),
                    ("relation", token_cell(relation)),
                ]
            })
            .collect(),
        Payload::SearchEvent {
            worker,
            pair_index,
            margin,
            x,
            y,
        } => vec![vec![
            ("worker", worker.to_string()),
            ("pair_index", pair_index.to_string()),
            ("margin", float_cell(*margin)),
            ("x", vec_cell(x)),
            ("y", vec_cell(y)),
        ]],
        Payload::SearchReport {
            verdict,
            pairs_evaluated,
            best_margin,
            out_of_hypothesis,
            reverified,
            ..
        } => vec![vec![
            ("verdict", token_cell(verdict)),
            ("pairs_evaluated", pairs_evaluated.to_string()),
            ("best_margin", opt_float_cell(*best_margin)),
            ("out_of_hypothesis", out_of_hypothesis.to_string()),
            ("reverified", reverified.to_string()),
        ]],
        Payload::Lemma {
            part,
            checked,
            violations,
            min_margin,
            strict_interior,
            passed,
            ..
        } => vec![vec![
            ("part", token_cell(part)),
            ("checked", checked.to_string()),
            ("violations", violations.len().to_string()),
            ("min_margin", opt_float_cell(*min_margin)),
            ("strict_interior", strict_interior.to_string()),
            ("passed", passed.to_string()),
        ]],
        Payload::Golden {
            name,
            passed,
            detail,
        } => vec![vec![
            ("name", name.clone()),
            ("passed", passed.to_string()),
            ("detail", detail.clone()),
        ]],
    }
}

/// Flattens homogeneous records to CSV text with the given columns; an empty
/// column list selects the payload kind's defaults.
pub fn emit_csv(records: &[ResultRecord], columns: &[String]) -> Result<String> {
    let kinds: Vec<&str> = records.iter().map(|r| r.payload.kind()).collect();
    if let Some(first) = kinds.first() {
        if kinds.iter().any(|k| k != first) {
            return Err(Error::Csv(format!(
                "heterogeneous records: {first} mixed with others"
            )));
        }
    }

    let owned_defaults: Vec<String>;
    let columns: &[String] = if columns.is_empty() {
        match kinds.first() {
            Some(kind) => {
                owned_defaults = default_columns(kind).iter().map(|s| s.to_string()).collect();
                &owned_defaults
            }
            None => {
                return Err(Error::Csv(
                    "no columns given and no records to infer them from".into(),
                ))
            }
        }
    } else {
        columns
    };

    let mut out = String::new();
    out.push_str(&columns.join(","));
    out.push('\n');

    for record in records {
        for row in rows_of(&record.payload) {
            let mut cells = Vec::with_capacity(columns.len());
            for col in columns {
                let cell = row
                    .iter()
                    .find(|(name, _)| name == col)
                    .map(|(_, value)| value.clone())
                    .ok_or_else(|| {
                        Error::Csv(format!(
                            "unknown column {col:?} for {} records",
                            record.payload.kind()
                        ))
                    })?;
                cells.push(quote(&cell));
            }
            out.push_str(&cells.join(","));
            out.push('\n');
        }
    }
    Ok(out)
}
