//! Result records: one JSON line per result, reproducible byte-for-byte.
//!
//! Identical config and seed produce identical payload bytes: floats
//! serialize as the shortest decimal that round-trips, collections are
//! ordered, and nothing nondeterministic enters the payload. The timestamp
//! defaults to 0 so that whole records are reproducible; set `SOT_TIMESTAMP`
//! to `now` (or a number) to stamp wall-clock time instead.

use serde::Serialize;

use crate::ext_real::ExtReal;
use crate::intertwining::{CoordDelta, Relation, SearchReport, SearchVerdict};
use crate::lemma::{ViolationSample, WideningPart};
use crate::solvers::{SolveResult, SolveStatus};
use crate::translates::MaximaVector;

pub const SCHEMA_VERSION: u32 = 1;

/// One output record.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRecord {
    pub schema_version: u32,
    pub config_digest: String,
    pub timestamp: u64,
    pub rng_seed: u64,
    pub payload: Payload,
}

impl ResultRecord {
    pub fn new(config_digest: &str, rng_seed: u64, payload: Payload) -> Self {
        ResultRecord {
            schema_version: SCHEMA_VERSION,
            config_digest: config_digest.to_string(),
            timestamp: timestamp_from_env(),
            rng_seed,
            payload,
        }
    }

    /// The JSONL line for this record (no trailing newline).
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serialization cannot fail")
    }
}

fn timestamp_from_env() -> u64 {
    match std::env::var("SOT_TIMESTAMP") {
        Ok(v) if v == "now" => std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        Ok(v) => v.parse().unwrap_or(0),
        Err(_) => 0,
    }
}

/// Command-specific result payloads.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Payload {
    Eval {
        t: f64,
        field: ExtReal,
        pure_sum: ExtReal,
        total: ExtReal,
    },
    Maxima {
        m: Vec<ExtReal>,
        argmax: Vec<Option<f64>>,
        regular: bool,
        m_bar: ExtReal,
        m_under: ExtReal,
    },
    Solve {
        nodes: Vec<f64>,
        value: ExtReal,
        residual: Option<f64>,
        status: SolveStatus,
        evaluations: u64,
    },
    Compare {
        relation: Relation,
        witness_up: Option<usize>,
        witness_down: Option<usize>,
        margins: Vec<CoordDelta>,
    },
    /// One per improvement of the best majorization margin.
    SearchEvent {
        worker: usize,
        pair_index: u64,
        margin: f64,
        x: Vec<f64>,
        y: Vec<f64>,
    },
    SearchReport {
        verdict: SearchVerdict,
        pairs_evaluated: u64,
        best_margin: Option<f64>,
        best_x: Option<Vec<f64>>,
        best_y: Option<Vec<f64>>,
        out_of_hypothesis: bool,
        reverified: bool,
    },
    Lemma {
        part: WideningPart,
        kappa: Option<f64>,
        checked: usize,
        violations: Vec<ViolationSample>,
        min_margin: Option<f64>,
        midpoint_margins: Vec<f64>,
        strict_interior: bool,
        passed: bool,
    },
    Golden {
        name: String,
        passed: bool,
        detail: String,
    },
}

impl Payload {
    pub fn from_maxima(mv: &MaximaVector) -> Self {
        Payload::Maxima {
            m: mv.m().to_vec(),
            argmax: mv.argmax().to_vec(),
            regular: mv.is_regular(),
            m_bar: mv.m_bar(),
            m_under: mv.m_under(),
        }
    }

    pub fn from_solve(result: &SolveResult) -> Self {
        Payload::Solve {
            nodes: result.nodes.nodes().to_vec(),
            value: result.value,
            residual: result.residual,
            status: result.status,
            evaluations: result.evaluations,
        }
    }

    pub fn from_search_report(report: &SearchReport) -> Self {
        Payload::SearchReport {
            verdict: report.verdict,
            pairs_evaluated: report.pairs_evaluated,
            best_margin: report.best_margin,
            best_x: report
                .best_pair
                .as_ref()
                .map(|(x, _)| x.nodes().to_vec()),
            best_y: report
                .best_pair
                .as_ref()
                .map(|(_, y)| y.nodes().to_vec()),
            out_of_hypothesis: report.out_of_hypothesis,
            reverified: report.reverified,
        }
    }

    /// Discriminant name, used for CSV homogeneity checks.
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Eval { .. } => "eval",
            Payload::Maxima { .. } => "maxima",
            Payload::Solve { .. } => "solve",
            Payload::Compare { .. } => "compare",
            Payload::SearchEvent { .. } => "search_event",
            Payload::SearchReport { .. } => "search_report",
            Payload::Lemma { .. } => "lemma",
            Payload::Golden { .. } => "golden",
        }
    }
}
