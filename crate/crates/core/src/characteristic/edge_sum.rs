//! Edge sum with coordination cost.
//!
//! `v(C)` is the total weight of instance edges with both endpoints in `C`
//! plus `kappa(C)`. Positive weights form the superadditive part; negative
//! weights and `kappa` form the subadditive part.

use super::{kappa, CharacteristicFunction};
use crate::agent_set::AgentSet;
use crate::error::{GccfError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSumParams {
    /// `(i, j, w)` per instance edge.
    pub weights: Vec<(usize, usize, f64)>,
    pub gamma: f64,
}

#[derive(Debug, Clone)]
pub struct EdgeSumFunction {
    n: usize,
    params: EdgeSumParams,
    // adj[i] holds (j, w) for j > i
    adj: Vec<Vec<(usize, f64)>>,
}

impl EdgeSumFunction {
    pub fn new(n: usize, params: EdgeSumParams) -> Result<Self> {
        if !(params.gamma > 1.0) {
            return Err(GccfError::InvalidParameters(format!(
                "gamma must be > 1, got {}",
                params.gamma
            )));
        }
        let mut adj = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        for &(i, j, w) in &params.weights {
            for index in [i, j] {
                if index >= n {
                    return Err(GccfError::InvalidAgentIndex { index, n });
                }
            }
            let (a, b) = (i.min(j), i.max(j));
            if a == b || !w.is_finite() {
                return Err(GccfError::InvalidParameters(format!(
                    "bad weighted edge ({i}, {j}, {w})"
                )));
            }
            if !seen.insert((a, b)) {
                return Err(GccfError::InvalidParameters(format!(
                    "edge ({a}, {b}) has more than one weight"
                )));
            }
            adj[a].push((b, w));
        }
        Ok(EdgeSumFunction { n, params, adj })
    }

    pub fn params(&self) -> &EdgeSumParams {
        &self.params
    }

    /// Returns `(positive, negative)` weight sums over edges inside `c`.
    fn internal_weights(&self, c: &AgentSet) -> (f64, f64) {
        let (mut pos, mut neg) = (0.0, 0.0);
        for i in c {
            for &(j, w) in &self.adj[i] {
                if c.contains(j) {
                    if w >= 0.0 {
                        pos += w;
                    } else {
                        neg += w;
                    }
                }
            }
        }
        (pos, neg)
    }
}

impl CharacteristicFunction for EdgeSumFunction {
    fn n_agents(&self) -> usize {
        self.n
    }

    fn v_plus(&self, c: &AgentSet) -> f64 {
        self.internal_weights(c).0
    }

    fn v_minus(&self, c: &AgentSet) -> f64 {
        self.internal_weights(c).1 + kappa(c.len(), self.params.gamma)
    }

    fn value(&self, c: &AgentSet) -> f64 {
        let (pos, neg) = self.internal_weights(c);
        pos + (neg + kappa(c.len(), self.params.gamma))
    }

    fn as_edge_sum(&self) -> Option<&EdgeSumFunction> {
        Some(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle(ws: [f64; 3]) -> EdgeSumFunction {
        EdgeSumFunction::new(
            3,
            EdgeSumParams {
                weights: vec![(0, 1, ws[0]), (1, 2, ws[1]), (0, 2, ws[2])],
                gamma: 1.3,
            },
        )
        .unwrap()
    }

    #[test]
    fn singleton_is_kappa() {
        let f = triangle([5.0, -3.0, 0.0]);
        assert_eq!(f.value(&AgentSet::singleton(3, 1)), -1.0);
    }

    #[test]
    fn pair_with_positive_edge() {
        let f = triangle([5.0, -3.0, 0.0]);
        let v = f.value(&AgentSet::from_agents(3, [0, 1]));
        assert!((v - 2.5377).abs() < 1e-4, "{v}");
    }

    #[test]
    fn triangle_split() {
        let f = triangle([5.0, -3.0, 0.0]);
        let c = AgentSet::full(3);
        assert!((f.value(&c) + 2.171168).abs() < 1e-4);
        assert_eq!(f.v_plus(&c), 5.0);
        assert!((f.v_minus(&c) - (-3.0 - 3f64.powf(1.3))).abs() < 1e-12);
    }

    #[test]
    fn rejects_duplicate_weights() {
        let r = EdgeSumFunction::new(
            2,
            EdgeSumParams {
                weights: vec![(0, 1, 1.0), (1, 0, 2.0)],
                gamma: 1.3,
            },
        );
        assert!(r.is_err());
    }
}
