//! Ordered node systems in the closed simplex.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Nodes `0 <= y_1 <= … <= y_n <= 1`, with the virtual endpoints `y_0 = 0`
/// and `y_{n+1} = 1` implied.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct NodeSystem {
    nodes: Vec<f64>,
}

impl NodeSystem {
    pub fn new(nodes: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::Nodes("need at least one node".into()));
        }
        if nodes
            .iter()
            .any(|y| !(y.is_finite() && (0.0..=1.0).contains(y)))
        {
            return Err(Error::Nodes(format!("nodes must lie in [0, 1]: {nodes:?}")));
        }
        if nodes.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Nodes(format!("nodes must be sorted: {nodes:?}")));
        }
        Ok(NodeSystem { nodes })
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `y_j` for `j = 0..=n+1`, including the virtual endpoints.
    pub fn extended(&self, j: usize) -> f64 {
        let n = self.n();
        debug_assert!(j <= n + 1);
        if j == 0 {
            0.0
        } else if j == n + 1 {
            1.0
        } else {
            self.nodes[j - 1]
        }
    }

    /// The interval `I_j = [y_j, y_{j+1}]`, `j = 0..=n`.
    pub fn interval(&self, j: usize) -> (f64, f64) {
        (self.extended(j), self.extended(j + 1))
    }

    /// True when all inequalities `0 < y_1 < … < y_n < 1` are strict.
    pub fn in_open_simplex(&self) -> bool {
        let mut prev = 0.0;
        for &y in &self.nodes {
            if y <= prev {
                return false;
            }
            prev = y;
        }
        prev < 1.0
    }

    /// Max-norm distance between two systems of the same size.
    pub fn max_distance(&self, other: &NodeSystem) -> f64 {
        assert_eq!(self.n(), other.n());
        self.nodes
            .iter()
            .zip(other.nodes.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl TryFrom<Vec<f64>> for NodeSystem {
    type Error = Error;

    fn try_from(nodes: Vec<f64>) -> Result<Self> {
        NodeSystem::new(nodes)
    }
}

impl From<NodeSystem> for Vec<f64> {
    fn from(y: NodeSystem) -> Vec<f64> {
        y.nodes
    }
}
