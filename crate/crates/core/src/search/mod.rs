//! Solve modes over the contraction-graph search tree.
//!
//! * [`enumerate`]: depth-first visit of every feasible coalition structure.
//! * [`cfss`]: branch and bound; a popped node is expanded only when its
//!   subtree bound strictly exceeds the incumbent value.
//! * [`cfss_anytime`]: the same search under a [`Budget`], reporting the
//!   frontier bound and the maximum performance ratio on exhaustion.
//! * [`cfss_parallel`]: first-generation subtrees shared among worker threads
//!   with a common incumbent.
//!
//! All modes use an explicit stack. Children are pushed in reverse so they
//! pop in ascending edge rank.

mod anytime;
mod engine;
mod parallel;

use std::time::Duration;

pub use anytime::{cfss_anytime, cfss_anytime_with, Frontier};
pub use parallel::{cfss_parallel, cfss_parallel_with, ParallelConfig};

use crate::characteristic::{bound_edge_sum, bound_m, CharacteristicFunction};
use crate::contraction_graph::{CoalitionStructure, ContractionGraph};
use crate::error::{GccfError, Result};
use engine::{Dfs, Limits, LocalIncumbent};

/// Which subtree upper bound drives pruning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundKind {
    /// `V^-(CS) + V^+(residual components)`; valid for any m+a function.
    #[default]
    General,
    /// Current value plus positive weight on green edges; edge-sum only.
    EdgeSum,
}

impl BoundKind {
    pub(crate) fn eval<F: CharacteristicFunction + ?Sized>(self, f: &F, g: &ContractionGraph) -> f64 {
        match self {
            BoundKind::General => bound_m(f, g),
            BoundKind::EdgeSum => bound_edge_sum(f, g),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub best: CoalitionStructure,
    pub best_value: f64,
    /// Upper bound on the optimum; equals `best_value` when completed.
    pub upper_bound: f64,
    /// Maximum performance ratio; `1.0` when completed, `+inf` when degenerate.
    pub mpr: f64,
    /// Set when the ratio is undefined (zero or sign-changing denominator).
    pub mpr_degenerate: bool,
    /// Nodes taken off the frontier, pruned ones included.
    pub nodes_visited: u64,
    /// Visited nodes whose bound failed the guard.
    pub nodes_pruned: u64,
    pub completed: bool,
    pub wall_time: Duration,
}

impl SolveReport {
    /// `nodes_pruned / nodes_visited`, in `[0, 1]`.
    pub fn pruned_fraction(&self) -> f64 {
        if self.nodes_visited == 0 {
            0.0
        } else {
            self.nodes_pruned as f64 / self.nodes_visited as f64
        }
    }
}

/// Limits for anytime search. The root is always visited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub time_limit: Option<Duration>,
    /// Maximum number of node expansions; `Some(0)` evaluates the bound at
    /// the root only.
    pub node_limit: Option<u64>,
}

impl Budget {
    pub fn time(limit: Duration) -> Self {
        Budget {
            time_limit: Some(limit),
            node_limit: None,
        }
    }

    pub fn nodes(limit: u64) -> Self {
        Budget {
            time_limit: None,
            node_limit: Some(limit),
        }
    }

    pub fn root_only() -> Self {
        Self::nodes(0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.time_limit.is_none() && self.node_limit.is_none() {
            return Err(GccfError::InvalidBudget);
        }
        Ok(())
    }
}

/// Snapshot handed to progress callbacks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Progress {
    pub nodes_visited: u64,
    pub nodes_pruned: u64,
    pub best_value: f64,
    pub elapsed: Duration,
}

/// Options shared by the single-threaded modes.
pub struct SearchOptions<'a> {
    pub bound: BoundKind,
    pub budget: Option<Budget>,
    /// Called every `progress_interval` visited nodes.
    pub progress_interval: u64,
    pub on_progress: Option<&'a mut dyn FnMut(&Progress)>,
}

impl Default for SearchOptions<'_> {
    fn default() -> Self {
        SearchOptions {
            bound: BoundKind::General,
            budget: None,
            progress_interval: 100_000,
            on_progress: None,
        }
    }
}

impl<'a> SearchOptions<'a> {
    pub fn with_bound(bound: BoundKind) -> Self {
        SearchOptions {
            bound,
            ..Default::default()
        }
    }
}

/// Returns the graph the search should start from: for the edge-sum bound,
/// the root with weight accumulators attached.
pub(crate) fn prepare_root<F: CharacteristicFunction + ?Sized>(
    g: &ContractionGraph,
    f: &F,
    bound: BoundKind,
) -> Result<ContractionGraph> {
    if f.n_agents() != g.n_agents() {
        return Err(GccfError::InvalidParameters(format!(
            "function has {} agents, graph has {}",
            f.n_agents(),
            g.n_agents()
        )));
    }
    match bound {
        BoundKind::General => Ok(g.clone()),
        BoundKind::EdgeSum => {
            let es = f.as_edge_sum().ok_or(GccfError::IncompatibleBound)?;
            g.clone().with_edge_weights(&es.params().weights)
        }
    }
}

/// Exhaustive depth-first traversal of every feasible coalition structure.
pub fn enumerate<F: CharacteristicFunction + ?Sized>(
    g: &ContractionGraph,
    f: &F,
) -> Result<SolveReport> {
    enumerate_with(g, f, SearchOptions::default())
}

/// [`enumerate`] with a progress callback and an optional budget.
pub fn enumerate_with<F: CharacteristicFunction + ?Sized>(
    g: &ContractionGraph,
    f: &F,
    opts: SearchOptions<'_>,
) -> Result<SolveReport> {
    run_serial(g, f, opts, false)
}

/// Branch and bound to optimality.
pub fn cfss<F: CharacteristicFunction + ?Sized>(
    g: &ContractionGraph,
    f: &F,
    bound: BoundKind,
) -> Result<SolveReport> {
    cfss_with(g, f, SearchOptions::with_bound(bound))
}

pub fn cfss_with<F: CharacteristicFunction + ?Sized>(
    g: &ContractionGraph,
    f: &F,
    opts: SearchOptions<'_>,
) -> Result<SolveReport> {
    run_serial(g, f, opts, true)
}

fn run_serial<F: CharacteristicFunction + ?Sized>(
    g: &ContractionGraph,
    f: &F,
    opts: SearchOptions<'_>,
    prune: bool,
) -> Result<SolveReport> {
    if let Some(b) = &opts.budget {
        b.validate()?;
    }
    let root = prepare_root(g, f, opts.bound)?;
    let mut dfs = Dfs::new(f, opts.bound, prune, Limits::from_budget(opts.budget));
    dfs.set_progress(opts.progress_interval, opts.on_progress);
    let mut incumbent = LocalIncumbent::new(f, &root);
    let mut stack = vec![root];
    let completed = dfs.run(&mut stack, &mut incumbent);
    let upper_bound = if completed {
        incumbent.value
    } else {
        stack
            .iter()
            .map(|n| opts.bound.eval(f, n))
            .fold(incumbent.value, f64::max)
    };
    let (mpr, degenerate) = if completed {
        (1.0, false)
    } else {
        report_mpr(f, incumbent.value, upper_bound)
    };
    Ok(SolveReport {
        best: incumbent.graph.as_coalition_structure(),
        best_value: incumbent.value,
        upper_bound,
        mpr,
        mpr_degenerate: degenerate,
        nodes_visited: dfs.visited,
        nodes_pruned: dfs.pruned,
        completed,
        wall_time: dfs.elapsed(),
    })
}

/// `max(approx/bound, bound/approx)`; `None` when the two differ in sign or
/// either is zero.
pub fn max_performance_ratio(approx: f64, bound: f64) -> Option<f64> {
    if approx == 0.0 || bound == 0.0 || (approx > 0.0) != (bound > 0.0) {
        return None;
    }
    Some((approx / bound).max(bound / approx))
}

/// `(bound - lb) / (approx - lb)`; `None` when `approx <= lb`.
pub fn shifted_performance_ratio(approx: f64, bound: f64, lower: f64) -> Option<f64> {
    if !(approx > lower) {
        return None;
    }
    Some((bound - lower) / (approx - lower))
}

/// MPR in the form suited to `f`: shifted by `V^-(A)` for edge sum, plain
/// otherwise.
pub(crate) fn report_mpr<F: CharacteristicFunction + ?Sized>(
    f: &F,
    approx: f64,
    bound: f64,
) -> (f64, bool) {
    let ratio = if f.as_edge_sum().is_some() {
        let grand = crate::agent_set::AgentSet::full(f.n_agents());
        shifted_performance_ratio(approx, bound, f.v_minus(&grand))
    } else {
        max_performance_ratio(approx, bound)
    };
    match ratio {
        Some(r) => (r, false),
        None => (f64::INFINITY, true),
    }
}

/// Number of nodes in the search tree below (and including) `g`, i.e. the
/// number of feasible coalition structures when `g` is a root.
pub fn count_structures(g: &ContractionGraph) -> u64 {
    let mut stack = vec![g.clone()];
    let mut count = 0;
    while let Some(node) = stack.pop() {
        count += 1;
        stack.extend(node.children());
    }
    count
}
