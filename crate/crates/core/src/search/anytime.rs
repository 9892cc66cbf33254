//! Anytime branch and bound and explicit frontier expansion.

use super::{run_serial, BoundKind, Budget, SearchOptions, SolveReport};
use crate::characteristic::{graph_value, CharacteristicFunction};
use crate::contraction_graph::{CoalitionStructure, ContractionGraph};
use crate::error::Result;

/// Branch and bound under a budget. On exhaustion the upper bound is
/// `max(V(best), max M over the unexplored stack)`.
pub fn cfss_anytime<F: CharacteristicFunction + ?Sized>(
    g: &ContractionGraph,
    f: &F,
    bound: BoundKind,
    budget: Budget,
) -> Result<SolveReport> {
    cfss_anytime_with(
        g,
        f,
        SearchOptions {
            bound,
            budget: Some(budget),
            ..Default::default()
        },
    )
}

/// [`cfss_anytime`] with progress reporting. `opts.budget` must be set.
pub fn cfss_anytime_with<F: CharacteristicFunction + ?Sized>(
    g: &ContractionGraph,
    f: &F,
    opts: SearchOptions<'_>,
) -> Result<SolveReport> {
    opts.budget.unwrap_or_default().validate()?;
    run_serial(g, f, opts, true)
}

/// A search frontier expanded one level at a time.
///
/// Each frontier entry carries its subtree bound. Expanding visits every
/// entry: entries whose bound does not beat the incumbent are dropped, the
/// rest update the incumbent and are replaced by their children.
pub struct Frontier<'a, F: ?Sized> {
    f: &'a F,
    bound: BoundKind,
    nodes: Vec<(ContractionGraph, f64)>,
    best_value: f64,
    best: ContractionGraph,
    depth: usize,
}

impl<'a, F: CharacteristicFunction + ?Sized> Frontier<'a, F> {
    /// Frontier holding only the root, with the root as incumbent.
    pub fn new(g: &ContractionGraph, f: &'a F, bound: BoundKind) -> Result<Self> {
        let root = super::prepare_root(g, f, bound)?;
        let m = bound.eval(f, &root);
        Ok(Frontier {
            f,
            bound,
            best_value: graph_value(f, &root),
            best: root.clone(),
            nodes: vec![(root, m)],
            depth: 0,
        })
    }

    /// `B(F) = max(V(best), max M over the frontier)`.
    pub fn bound(&self) -> f64 {
        self.nodes
            .iter()
            .map(|(_, m)| *m)
            .fold(self.best_value, f64::max)
    }

    pub fn best_value(&self) -> f64 {
        self.best_value
    }

    pub fn best(&self) -> CoalitionStructure {
        self.best.as_coalition_structure()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Levels expanded so far.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Replaces every frontier node by its children. Returns `false` once the
    /// frontier is empty.
    pub fn expand_level(&mut self) -> bool {
        let current = std::mem::take(&mut self.nodes);
        for (node, m) in current {
            if !(m > self.best_value) {
                continue;
            }
            let v = graph_value(self.f, &node);
            if v > self.best_value {
                self.best_value = v;
                self.best = node.clone();
            }
            for child in node.children() {
                let cm = self.bound.eval(self.f, &child);
                self.nodes.push((child, cm));
            }
        }
        self.depth += 1;
        !self.nodes.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characteristic::{CoalitionSizeFunction, CoalitionSizeParams};
    use crate::error::GccfError;
    use std::time::Duration;

    fn path(n: usize) -> ContractionGraph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        ContractionGraph::from_instance_graph(&e, n).unwrap()
    }

    fn coalsize(n: usize, d: f64) -> CoalitionSizeFunction {
        let distances = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { d }).collect())
            .collect();
        CoalitionSizeFunction::new(CoalitionSizeParams {
            alpha: 2.2,
            distances,
        })
        .unwrap()
    }

    #[test]
    fn empty_budget_rejected() {
        let err = cfss_anytime(&path(3), &coalsize(3, 0.0), BoundKind::General, Budget::default())
            .unwrap_err();
        assert!(matches!(err, GccfError::InvalidBudget));
    }

    #[test]
    fn unlimited_budget_matches_cfss() {
        let g = path(6);
        let f = coalsize(6, 1.0);
        let full = super::super::cfss(&g, &f, BoundKind::General).unwrap();
        let any = cfss_anytime(&g, &f, BoundKind::General, Budget::time(Duration::from_secs(60)))
            .unwrap();
        assert!(any.completed);
        assert_eq!(any.best_value, full.best_value);
        assert_eq!(any.mpr, 1.0);
        assert_eq!(any.upper_bound, any.best_value);
    }

    #[test]
    fn root_only_closed_form() {
        let n = 10;
        let r = cfss_anytime(&path(n), &coalsize(n, 0.0), BoundKind::General, Budget::root_only())
            .unwrap();
        assert!(!r.completed);
        assert_eq!(r.nodes_visited, 1);
        assert_eq!(r.best_value, n as f64);
        let expected = (n as f64).powf(1.2);
        assert!((r.mpr - expected).abs() / expected < 1e-6);
    }

    #[test]
    fn frontier_bound_never_increases() {
        let g = path(7);
        let f = coalsize(7, 0.3);
        let optimum = super::super::enumerate(&g, &f).unwrap().best_value;
        let mut fr = Frontier::new(&g, &f, BoundKind::General).unwrap();
        let mut last = fr.bound();
        while fr.expand_level() {
            let b = fr.bound();
            assert!(b <= last && b >= optimum);
            last = b;
        }
        assert_eq!(fr.bound(), optimum);
    }
}
