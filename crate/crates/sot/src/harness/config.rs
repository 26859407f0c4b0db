//! Declarative experiment configuration.
//!
//! Configs are JSON objects tagged by `command`; the instance description
//! nests kernel, weights and field. A minimal config:
//!
//! ```json
//! { "command": "equioscillate",
//!   "instance": { "kernel": { "family": "log" }, "weights": [1.0] } }
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::ProblemInstance;
use crate::intertwining::SearchOptions;
use crate::kernel::Kernel;
use crate::lemma::{WideningParams, WideningPart};
use crate::nodes::NodeSystem;
use crate::solvers::SolverOptions;
use crate::translates::DEFAULT_ARGMAX_TOL;

fn default_maxima_tol() -> f64 {
    DEFAULT_ARGMAX_TOL
}

fn default_value_tol() -> f64 {
    1e-9
}

fn default_lemma_grid() -> usize {
    1000
}

/// The command this config runs, with its command-specific inputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum CommandConfig {
    Eval {
        instance: ProblemInstance,
        nodes: NodeSystem,
        t: f64,
    },
    Maxima {
        instance: ProblemInstance,
        nodes: NodeSystem,
        #[serde(default = "default_maxima_tol")]
        tol: f64,
    },
    Equioscillate {
        instance: ProblemInstance,
        #[serde(default)]
        options: SolverOptions,
    },
    Minimax {
        instance: ProblemInstance,
        #[serde(default)]
        options: SolverOptions,
    },
    Maximin {
        instance: ProblemInstance,
        #[serde(default)]
        options: SolverOptions,
    },
    Compare {
        instance: ProblemInstance,
        x: NodeSystem,
        y: NodeSystem,
        #[serde(default = "default_value_tol")]
        value_tol: f64,
    },
    Search {
        instance: ProblemInstance,
        #[serde(default)]
        options: SearchOptions,
    },
    LemmaCheck {
        kernel: Kernel,
        params: WideningParams,
        part: WideningPart,
        #[serde(default = "default_lemma_grid")]
        grid: usize,
    },
    Golden,
}

impl CommandConfig {
    /// The kebab-case tag, as it appears in config files and on the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            CommandConfig::Eval { .. } => "eval",
            CommandConfig::Maxima { .. } => "maxima",
            CommandConfig::Equioscillate { .. } => "equioscillate",
            CommandConfig::Minimax { .. } => "minimax",
            CommandConfig::Maximin { .. } => "maximin",
            CommandConfig::Compare { .. } => "compare",
            CommandConfig::Search { .. } => "search",
            CommandConfig::LemmaCheck { .. } => "lemma-check",
            CommandConfig::Golden => "golden",
        }
    }
}

/// A full experiment description: command, seed, output destination.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(flatten)]
    pub command: CommandConfig,
    /// Overrides the per-command RNG seed when set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
}

impl ExperimentConfig {
    /// The RNG seed this run will use.
    pub fn effective_seed(&self) -> u64 {
        if let Some(seed) = self.seed {
            return seed;
        }
        match &self.command {
            CommandConfig::Equioscillate { options, .. }
            | CommandConfig::Minimax { options, .. }
            | CommandConfig::Maximin { options, .. } => options.rng_seed,
            CommandConfig::Search { options, .. } => options.rng_seed,
            _ => 0,
        }
    }
}

/// Parses and validates a config. All semantic checks (positive weights,
/// kernel parameters, field shape, n-field counting) run during parsing, so
/// a returned config is runnable.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
}

/// Canonical serialization of a config: JSON with sorted keys and
/// shortest-round-trip floats. The output path is not part of the
/// experiment's identity and is excluded.
pub fn canonical_config(config: &ExperimentConfig) -> String {
    let normalized = ExperimentConfig {
        output_path: None,
        ..config.clone()
    };
    serde_json::to_string(&normalized).expect("config serialization cannot fail")
}

pub(crate) fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Content hash of the canonicalized config.
pub fn config_digest(config: &ExperimentConfig) -> String {
    format!("{:016x}", fnv1a64(canonical_config(config).as_bytes()))
}
