//! Parallel branch and bound over independent subtrees.
//!
//! The root is expanded on the calling thread. Its children (optionally split
//! further, see [`ParallelConfig::split_target`]) become tasks in depth-first
//! order. A leading block of tasks is dealt round-robin to the workers; the
//! remainder is handed out dynamically to whichever worker finishes first.
//! Workers share one incumbent whose value only ever increases, so a stale
//! read can only weaken pruning.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use super::engine::{Dfs, Limits, SharedIncumbent};
use super::{prepare_root, BoundKind, SolveReport};
use crate::characteristic::{graph_value, CharacteristicFunction};
use crate::contraction_graph::ContractionGraph;
use crate::error::{GccfError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParallelConfig {
    pub workers: usize,
    /// Keep splitting the first open task until at least this many tasks
    /// exist. `None` stops at the root's children.
    pub split_target: Option<usize>,
    /// Fraction of tasks assigned statically, rounded up.
    pub static_fraction: f64,
}

impl ParallelConfig {
    pub fn new(workers: usize) -> Self {
        ParallelConfig {
            workers,
            split_target: None,
            static_fraction: 0.5,
        }
    }
}

pub fn cfss_parallel<F: CharacteristicFunction + ?Sized>(
    g: &ContractionGraph,
    f: &F,
    bound: BoundKind,
    workers: usize,
) -> Result<SolveReport> {
    cfss_parallel_with(g, f, bound, ParallelConfig::new(workers))
}

pub fn cfss_parallel_with<F: CharacteristicFunction + ?Sized>(
    g: &ContractionGraph,
    f: &F,
    bound: BoundKind,
    config: ParallelConfig,
) -> Result<SolveReport> {
    if config.workers == 0 {
        return Err(GccfError::InvalidWorkerCount);
    }
    if !(0.0..=1.0).contains(&config.static_fraction) {
        return Err(GccfError::InvalidParameters(
            "static_fraction must be in [0, 1]".into(),
        ));
    }
    let start = Instant::now();
    let root = prepare_root(g, f, bound)?;
    let incumbent = SharedIncumbent::new(graph_value(f, &root), root.clone());

    // Splitting happens on this thread with its own counters.
    let mut splitter = Dfs::new(f, bound, true, Limits::none());
    let mut tasks = vec![root];
    let target = config.split_target.unwrap_or(0).max(1);
    let mut expanded_root = false;
    loop {
        if expanded_root && tasks.len() >= target {
            break;
        }
        let Some(pos) = tasks.iter().position(|t| t.green_edge_count() > 0) else {
            break;
        };
        let node = tasks.remove(pos);
        let mut inc = &incumbent;
        let children = splitter.visit(&node, &mut inc).unwrap_or_default();
        tasks.splice(pos..pos, children);
        expanded_root = true;
    }
    let mut visited = splitter.visited;
    let mut pruned = splitter.pruned;

    let workers = config.workers;
    let n_static = ((tasks.len() as f64) * config.static_fraction).ceil() as usize;
    let n_static = n_static.min(tasks.len());
    let next_dynamic = AtomicUsize::new(n_static);
    let tasks = &tasks;
    let incumbent_ref = &incumbent;

    let counters: Vec<(u64, u64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let next_dynamic = &next_dynamic;
                scope.spawn(move || {
                    let mut dfs = Dfs::new(f, bound, true, Limits::none());
                    let mut inc = incumbent_ref;
                    let mut stack = Vec::new();
                    for i in (w..n_static).step_by(workers) {
                        stack.push(tasks[i].clone());
                        dfs.run(&mut stack, &mut inc);
                    }
                    loop {
                        let i = next_dynamic.fetch_add(1, Ordering::Relaxed);
                        if i >= tasks.len() {
                            break;
                        }
                        stack.push(tasks[i].clone());
                        dfs.run(&mut stack, &mut inc);
                    }
                    (dfs.visited, dfs.pruned)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for (v, p) in counters {
        visited += v;
        pruned += p;
    }

    let (best_value, best_graph) = incumbent.into_inner();
    Ok(SolveReport {
        best: best_graph.as_coalition_structure(),
        best_value,
        upper_bound: best_value,
        mpr: 1.0,
        mpr_degenerate: false,
        nodes_visited: visited,
        nodes_pruned: pruned,
        completed: true,
        wall_time: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characteristic::{CoalitionSizeFunction, CoalitionSizeParams};

    #[test]
    fn zero_workers_rejected() {
        let g = ContractionGraph::from_instance_graph(&[(0, 1)], 2).unwrap();
        let f = CoalitionSizeFunction::new(CoalitionSizeParams {
            alpha: 2.0,
            distances: vec![vec![0.0; 2]; 2],
        })
        .unwrap();
        assert!(matches!(
            cfss_parallel(&g, &f, BoundKind::General, 0),
            Err(GccfError::InvalidWorkerCount)
        ));
    }

    #[test]
    fn matches_serial_on_small_graph() {
        let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 4), (4, 5)];
        let n = 6;
        let distances = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { ((i * 7 + j * 3) % 5) as f64 }).collect())
            .collect();
        let f = CoalitionSizeFunction::new(CoalitionSizeParams {
            alpha: 2.2,
            distances,
        })
        .unwrap();
        let g = ContractionGraph::from_instance_graph(&edges, n).unwrap();
        let serial = crate::search::cfss(&g, &f, BoundKind::General).unwrap();
        for workers in [1, 2, 3, 8] {
            let mut cfg = ParallelConfig::new(workers);
            let r = cfss_parallel_with(&g, &f, BoundKind::General, cfg).unwrap();
            assert_eq!(r.best_value, serial.best_value);
            cfg.split_target = Some(16);
            let r = cfss_parallel_with(&g, &f, BoundKind::General, cfg).unwrap();
            assert_eq!(r.best_value, serial.best_value);
        }
        let one = cfss_parallel(&g, &f, BoundKind::General, 1).unwrap();
        assert_eq!(one.best, serial.best);
    }
}
