//! Problem instances: a kernel, positive weights, and a compatible field.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldFunction;
use crate::kernel::Kernel;

/// One problem instance for `n = weights.len()` nodes.
///
/// Immutable after construction; safe to share across threads.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "InstanceRepr", into = "InstanceRepr")]
pub struct ProblemInstance {
    kernel: Kernel,
    weights: Vec<f64>,
    field: FieldFunction,
}

impl ProblemInstance {
    pub fn new(kernel: Kernel, weights: Vec<f64>, field: FieldFunction) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Nodes("need at least one weight".into()));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::NonPositiveWeight);
        }
        let report = field.validate_n_field(weights.len());
        if !report.valid {
            let count = match report.weighted_count {
                crate::field::WeightedCount::Infinite => f64::INFINITY,
                crate::field::WeightedCount::Finite(c) => c,
            };
            return Err(Error::FieldTooThin {
                count,
                n: weights.len(),
            });
        }
        Ok(ProblemInstance {
            kernel,
            weights,
            field,
        })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn field(&self) -> &FieldFunction {
        &self.field
    }
}

#[derive(Serialize, Deserialize)]
struct InstanceRepr {
    kernel: Kernel,
    weights: Vec<f64>,
    #[serde(default)]
    field: Option<FieldFunction>,
    /// Redundant with `weights.len()`; validated when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
}

impl TryFrom<InstanceRepr> for ProblemInstance {
    type Error = Error;

    fn try_from(repr: InstanceRepr) -> Result<Self> {
        if let Some(n) = repr.n {
            if n != repr.weights.len() {
                return Err(Error::Nodes(format!(
                    "declared n = {n} but {} weights were given",
                    repr.weights.len()
                )));
            }
        }
        // An omitted field means J ≡ 0.
        let field = repr.field.unwrap_or_else(FieldFunction::zero);
        ProblemInstance::new(repr.kernel, repr.weights, field)
    }
}

impl From<ProblemInstance> for InstanceRepr {
    fn from(p: ProblemInstance) -> InstanceRepr {
        InstanceRepr {
            kernel: p.kernel,
            weights: p.weights,
            field: Some(p.field),
            n: None,
        }
    }
}
