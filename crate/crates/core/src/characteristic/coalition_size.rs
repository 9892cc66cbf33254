//! Coalition size with distance cost: `v(C) = |C|^alpha - sum_{(i,j) in CxC} d(i,j)`.
//!
//! The distance sum runs over ordered pairs, so a symmetric matrix counts each
//! unordered pair twice.

use super::CharacteristicFunction;
use crate::agent_set::AgentSet;
use crate::error::{GccfError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CoalitionSizeParams {
    pub alpha: f64,
    /// `n x n`, zero diagonal, nonnegative. Need not be symmetric.
    pub distances: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct CoalitionSizeFunction {
    params: CoalitionSizeParams,
}

impl CoalitionSizeFunction {
    pub fn new(params: CoalitionSizeParams) -> Result<Self> {
        let bad = |m: String| Err(GccfError::InvalidParameters(m));
        if !(params.alpha >= 1.0) {
            return bad(format!("alpha must be >= 1, got {}", params.alpha));
        }
        let n = params.distances.len();
        for (i, row) in params.distances.iter().enumerate() {
            if row.len() != n {
                return bad(format!("distance row {i} has {} entries, expected {n}", row.len()));
            }
            if row[i] != 0.0 {
                return bad(format!("d({i},{i}) must be 0"));
            }
            if row.iter().any(|&d| !(d >= 0.0) || !d.is_finite()) {
                return bad(format!("distance row {i} has a negative or non-finite entry"));
            }
        }
        Ok(CoalitionSizeFunction { params })
    }

    pub fn params(&self) -> &CoalitionSizeParams {
        &self.params
    }
}

impl CharacteristicFunction for CoalitionSizeFunction {
    fn n_agents(&self) -> usize {
        self.params.distances.len()
    }

    fn v_plus(&self, c: &AgentSet) -> f64 {
        (c.len() as f64).powf(self.params.alpha)
    }

    fn v_minus(&self, c: &AgentSet) -> f64 {
        let mut total = 0.0;
        for i in c {
            let row = &self.params.distances[i];
            for j in c {
                total += row[j];
            }
        }
        -total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(d: f64) -> CoalitionSizeFunction {
        CoalitionSizeFunction::new(CoalitionSizeParams {
            alpha: 2.2,
            distances: vec![vec![0.0, d], vec![d, 0.0]],
        })
        .unwrap()
    }

    #[test]
    fn singleton_value_is_one() {
        assert_eq!(pair(3.0).value(&AgentSet::singleton(2, 0)), 1.0);
    }

    #[test]
    fn pair_values() {
        let v = pair(3.0).value(&AgentSet::full(2));
        assert!((v + 1.4052).abs() < 1e-4, "{v}");
        let v = pair(0.0).value(&AgentSet::full(2));
        assert!((v - 4.5948).abs() < 1e-4, "{v}");
    }

    #[test]
    fn rejects_nonzero_diagonal() {
        let r = CoalitionSizeFunction::new(CoalitionSizeParams {
            alpha: 2.2,
            distances: vec![vec![1.0]],
        });
        assert!(r.is_err());
    }
}
