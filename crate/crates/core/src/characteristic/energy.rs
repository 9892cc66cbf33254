//! Collective energy purchasing.
//!
//! A coalition buys its aggregated baseload on the forward market and the
//! per-slot residual on the spot market:
//!
//! ```text
//! a(t)   = sum of member profiles at slot t
//! q_F    = min_t a(t)
//! q_S(t) = a(t) - q_F
//! energy = p_spot * sum_t q_S(t) + T * q_F * p_forward
//! ```
//!
//! Quantities are nonnegative and prices negative, so `energy <= 0`. The
//! energy term is the superadditive part; `kappa(C) = -|C|^gamma` is the
//! subadditive part.

use super::{kappa, CharacteristicFunction};
use crate::agent_set::AgentSet;
use crate::error::{GccfError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyParams {
    pub p_spot: f64,
    pub p_forward: f64,
    pub gamma: f64,
    /// One row of `T` nonnegative readings per agent.
    pub profiles: Vec<Vec<f64>>,
}

impl EnergyParams {
    pub fn slots(&self) -> usize {
        self.profiles.first().map_or(0, Vec::len)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let bad = |m: String| Err(GccfError::InvalidParameters(m));
        if !(self.gamma > 1.0) {
            return bad(format!("gamma must be > 1, got {}", self.gamma));
        }
        if !(self.p_spot < 0.0) || !(self.p_forward < 0.0) {
            return bad("prices must be negative".into());
        }
        if self.profiles.len() != n {
            return bad(format!("expected {n} profiles, got {}", self.profiles.len()));
        }
        let t = self.slots();
        for (i, row) in self.profiles.iter().enumerate() {
            if row.len() != t {
                return bad(format!("profile {i} has {} slots, expected {t}", row.len()));
            }
            if row.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
                return bad(format!("profile {i} has a negative or non-finite entry"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct EnergyFunction {
    params: EnergyParams,
}

impl EnergyFunction {
    pub fn new(params: EnergyParams) -> Result<Self> {
        params.validate(params.profiles.len())?;
        Ok(EnergyFunction { params })
    }

    pub fn params(&self) -> &EnergyParams {
        &self.params
    }

    /// Energy cost of a coalition; fails on an empty coalition.
    pub fn energy(&self, c: &AgentSet) -> Result<f64> {
        if c.is_empty() {
            return Err(GccfError::EmptyCoalition);
        }
        Ok(self.energy_unchecked(c))
    }

    fn energy_unchecked(&self, c: &AgentSet) -> f64 {
        let t = self.params.slots();
        if t == 0 {
            return 0.0;
        }
        let mut agg = vec![0.0; t];
        for i in c {
            for (a, x) in agg.iter_mut().zip(&self.params.profiles[i]) {
                *a += x;
            }
        }
        let q_forward = agg.iter().copied().fold(f64::INFINITY, f64::min);
        let spot: f64 = agg.iter().map(|a| a - q_forward).sum();
        spot * self.params.p_spot + t as f64 * q_forward * self.params.p_forward
    }
}

impl CharacteristicFunction for EnergyFunction {
    fn n_agents(&self) -> usize {
        self.params.profiles.len()
    }

    fn v_plus(&self, c: &AgentSet) -> f64 {
        self.energy_unchecked(c)
    }

    fn v_minus(&self, c: &AgentSet) -> f64 {
        kappa(c.len(), self.params.gamma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn func(profiles: Vec<Vec<f64>>) -> EnergyFunction {
        EnergyFunction::new(EnergyParams {
            p_spot: -80.0,
            p_forward: -70.0,
            gamma: 1.3,
            profiles,
        })
        .unwrap()
    }

    #[test]
    fn zero_profiles_cost_nothing() {
        let f = func(vec![vec![0.0; 48]; 3]);
        assert_eq!(f.energy(&AgentSet::full(3)).unwrap(), 0.0);
    }

    #[test]
    fn flat_profile_is_all_forward() {
        let f = func(vec![vec![1.0; 48]]);
        assert_eq!(f.energy(&AgentSet::full(1)).unwrap(), -3360.0);
    }

    #[test]
    fn complementary_profiles_merge_cheaper() {
        let first: Vec<f64> = (0..48).map(|t| if t < 24 { 1.0 } else { 0.0 }).collect();
        let second: Vec<f64> = first.iter().map(|x| 1.0 - x).collect();
        let f = func(vec![first, second]);
        let merged = f.energy(&AgentSet::full(2)).unwrap();
        let a = f.energy(&AgentSet::singleton(2, 0)).unwrap();
        let b = f.energy(&AgentSet::singleton(2, 1)).unwrap();
        assert_eq!(merged, -3360.0);
        assert_eq!(a, -1920.0);
        assert_eq!(b, -1920.0);
        assert!(merged >= a + b);
    }

    #[test]
    fn empty_coalition_rejected() {
        let f = func(vec![vec![1.0; 4]]);
        assert!(matches!(f.energy(&AgentSet::empty(1)), Err(GccfError::EmptyCoalition)));
    }

    #[test]
    fn validation() {
        let mut p = EnergyParams {
            p_spot: -80.0,
            p_forward: -70.0,
            gamma: 1.0,
            profiles: vec![vec![1.0; 4]],
        };
        assert!(EnergyFunction::new(p.clone()).is_err());
        p.gamma = 1.3;
        p.profiles[0][2] = -0.5;
        assert!(EnergyFunction::new(p.clone()).is_err());
        p.profiles[0][2] = 0.5;
        p.p_spot = 10.0;
        assert!(EnergyFunction::new(p).is_err());
    }
}
