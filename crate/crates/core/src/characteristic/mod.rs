//! Characteristic functions of the m+a family and the subtree upper bounds
//! they admit.
//!
//! Every function is split into a superadditive part `v_plus` and a
//! subadditive part `v_minus`; `value = v_plus + v_minus`. Coalition values
//! are computed on demand and never tabulated.

mod coalition_size;
mod edge_sum;
mod energy;

pub use coalition_size::{CoalitionSizeFunction, CoalitionSizeParams};
pub use edge_sum::{EdgeSumFunction, EdgeSumParams};
pub use energy::{EnergyFunction, EnergyParams};

use crate::agent_set::AgentSet;
use crate::contraction_graph::{CoalitionStructure, ContractionGraph};

/// Coalition management cost `-|C|^gamma`.
#[inline]
pub fn kappa(size: usize, gamma: f64) -> f64 {
    -(size as f64).powf(gamma)
}

pub trait CharacteristicFunction: Send + Sync {
    fn n_agents(&self) -> usize;

    /// Superadditive part.
    fn v_plus(&self, c: &AgentSet) -> f64;

    /// Subadditive part.
    fn v_minus(&self, c: &AgentSet) -> f64;

    fn value(&self, c: &AgentSet) -> f64 {
        self.v_plus(c) + self.v_minus(c)
    }

    /// Downcast used by the edge-sum bound.
    fn as_edge_sum(&self) -> Option<&EdgeSumFunction> {
        None
    }
}

/// `V(CS)`: sum of coalition values, in the order given.
pub fn structure_value<F: CharacteristicFunction + ?Sized>(f: &F, coalitions: &[AgentSet]) -> f64 {
    coalitions.iter().map(|c| f.value(c)).sum()
}

pub fn coalition_structure_value<F: CharacteristicFunction + ?Sized>(
    f: &F,
    cs: &CoalitionStructure,
) -> f64 {
    structure_value(f, cs.coalitions())
}

/// `V(CS)` of the structure a graph represents.
pub fn graph_value<F: CharacteristicFunction + ?Sized>(f: &F, g: &ContractionGraph) -> f64 {
    structure_value(f, g.vertices())
}

/// `V^-` of the structure a graph represents.
pub fn graph_v_minus<F: CharacteristicFunction + ?Sized>(f: &F, g: &ContractionGraph) -> f64 {
    g.vertices().iter().map(|c| f.v_minus(c)).sum()
}

/// General upper bound on every structure in the subtree rooted at `g`:
/// `V^-` of the current structure plus `V^+` of its residual components.
pub fn bound_m<F: CharacteristicFunction + ?Sized>(f: &F, g: &ContractionGraph) -> f64 {
    if g.edges().iter().all(|e| !e.is_green()) {
        return graph_value(f, g);
    }
    let (label, count) = g.green_component_labels();
    let mut comps = vec![AgentSet::empty(g.n_agents()); count];
    for (pos, c) in g.vertices().iter().enumerate() {
        comps[label[pos]].union_with(c);
    }
    graph_v_minus(f, g) + comps.iter().map(|c| f.v_plus(c)).sum::<f64>()
}

/// Edge-sum upper bound: the current value plus the positive weight still
/// reachable through green edges. Needs the graph's weight accumulators
/// (see [`ContractionGraph::with_edge_weights`]).
pub fn bound_edge_sum<F: CharacteristicFunction + ?Sized>(f: &F, g: &ContractionGraph) -> f64 {
    graph_value(f, g)
        + g.edges()
            .iter()
            .filter(|e| e.is_green())
            .map(|e| e.w_plus)
            .sum::<f64>()
}

/// The three benchmark functions behind one type.
#[derive(Debug, Clone)]
pub enum Characteristic {
    Energy(EnergyFunction),
    EdgeSum(EdgeSumFunction),
    CoalitionSize(CoalitionSizeFunction),
}

impl CharacteristicFunction for Characteristic {
    fn n_agents(&self) -> usize {
        match self {
            Characteristic::Energy(f) => f.n_agents(),
            Characteristic::EdgeSum(f) => f.n_agents(),
            Characteristic::CoalitionSize(f) => f.n_agents(),
        }
    }

    fn v_plus(&self, c: &AgentSet) -> f64 {
        match self {
            Characteristic::Energy(f) => f.v_plus(c),
            Characteristic::EdgeSum(f) => f.v_plus(c),
            Characteristic::CoalitionSize(f) => f.v_plus(c),
        }
    }

    fn v_minus(&self, c: &AgentSet) -> f64 {
        match self {
            Characteristic::Energy(f) => f.v_minus(c),
            Characteristic::EdgeSum(f) => f.v_minus(c),
            Characteristic::CoalitionSize(f) => f.v_minus(c),
        }
    }

    fn as_edge_sum(&self) -> Option<&EdgeSumFunction> {
        match self {
            Characteristic::EdgeSum(f) => Some(f),
            _ => None,
        }
    }
}
