use std::path::PathBuf;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{what} = {value} is outside {expected}")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("invalid kernel parameter: {0}")]
    KernelParam(String),
    #[error("invalid field function: {0}")]
    Field(String),
    #[error("invalid node system: {0}")]
    Nodes(String),
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("field assumes finite values at too few points: weighted count {count} is not > n = {n}")]
    FieldTooThin { count: f64, n: usize },
    #[error("tolerance must be positive, got {0}")]
    Tolerance(f64),
    #[error("invalid solver options: {0}")]
    SolverOptions(String),
    #[error("node system is singular: m_{index} = -inf")]
    SingularNodeSystem { index: usize },
    #[error("invalid widening parameters: {0}")]
    WideningParams(String),
    #[error("widening lemma hypotheses not met: {0}")]
    HypothesesNotMet(String),
    #[error("node index {index} out of range 1..={n}")]
    NodeIndex { index: usize, n: usize },
    #[error("cannot drop a node from a single-node system")]
    ReductionTooSmall,
    #[error("config error: {0}")]
    Config(String),
    #[error("cannot write CSV: {0}")]
    Csv(String),
    #[error("golden checks failed: {}", .0.join("; "))]
    GoldenMismatch(Vec<String>),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
