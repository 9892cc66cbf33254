use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use super::{BoundKind, Budget, Progress};
use crate::characteristic::{graph_value, CharacteristicFunction};
use crate::contraction_graph::ContractionGraph;

pub(crate) trait Incumbent {
    fn value(&self) -> f64;
    /// Stores `g` if `value` strictly improves on the current incumbent.
    fn offer(&mut self, value: f64, g: &ContractionGraph);
}

pub(crate) struct LocalIncumbent {
    pub value: f64,
    pub graph: ContractionGraph,
}

impl LocalIncumbent {
    pub fn new<F: CharacteristicFunction + ?Sized>(f: &F, root: &ContractionGraph) -> Self {
        LocalIncumbent {
            value: graph_value(f, root),
            graph: root.clone(),
        }
    }
}

impl Incumbent for LocalIncumbent {
    fn value(&self) -> f64 {
        self.value
    }

    fn offer(&mut self, value: f64, g: &ContractionGraph) {
        if value > self.value {
            self.value = value;
            self.graph = g.clone();
        }
    }
}

/// Incumbent shared between workers. The pair lives under the mutex; the
/// atomic mirrors its value for lock-free reads and only ever increases.
pub(crate) struct SharedIncumbent {
    bits: AtomicU64,
    best: Mutex<(f64, ContractionGraph)>,
}

impl SharedIncumbent {
    pub fn new(value: f64, graph: ContractionGraph) -> Self {
        SharedIncumbent {
            bits: AtomicU64::new(value.to_bits()),
            best: Mutex::new((value, graph)),
        }
    }

    pub fn value(&self) -> f64 {
        f64::from_bits(self.bits.load(Ordering::Acquire))
    }

    pub fn offer(&self, value: f64, g: &ContractionGraph) {
        if !(value > self.value()) {
            return;
        }
        let mut best = self.best.lock().unwrap();
        if value > best.0 {
            *best = (value, g.clone());
            self.bits.store(value.to_bits(), Ordering::Release);
        }
    }

    pub fn into_inner(self) -> (f64, ContractionGraph) {
        self.best.into_inner().unwrap()
    }
}

impl Incumbent for &SharedIncumbent {
    fn value(&self) -> f64 {
        SharedIncumbent::value(self)
    }

    fn offer(&mut self, value: f64, g: &ContractionGraph) {
        SharedIncumbent::offer(self, value, g)
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Limits {
    pub deadline: Option<Instant>,
    pub max_expansions: Option<u64>,
}

impl Limits {
    pub fn none() -> Self {
        Limits {
            deadline: None,
            max_expansions: None,
        }
    }

    pub fn from_budget(budget: Option<Budget>) -> Self {
        let now = Instant::now();
        match budget {
            None => Self::none(),
            Some(b) => Limits {
                deadline: b.time_limit.map(|t| now + t),
                max_expansions: b.node_limit,
            },
        }
    }
}

/// Depth-first branch and bound over an explicit stack.
pub(crate) struct Dfs<'a, 'p, F: ?Sized> {
    f: &'a F,
    bound: BoundKind,
    prune: bool,
    limits: Limits,
    start: Instant,
    pub visited: u64,
    pub pruned: u64,
    pub expansions: u64,
    progress_interval: u64,
    on_progress: Option<&'p mut dyn FnMut(&Progress)>,
}

impl<'a, 'p, F: CharacteristicFunction + ?Sized> Dfs<'a, 'p, F> {
    pub fn new(f: &'a F, bound: BoundKind, prune: bool, limits: Limits) -> Self {
        Dfs {
            f,
            bound,
            prune,
            limits,
            start: Instant::now(),
            visited: 0,
            pruned: 0,
            expansions: 0,
            progress_interval: 0,
            on_progress: None,
        }
    }

    pub fn set_progress(&mut self, interval: u64, cb: Option<&'p mut dyn FnMut(&Progress)>) {
        self.progress_interval = interval;
        self.on_progress = cb;
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    /// Processes one popped node. Returns its children (in visit order) when
    /// it passes the guard, `None` when pruned.
    pub fn visit(
        &mut self,
        node: &ContractionGraph,
        incumbent: &mut impl Incumbent,
    ) -> Option<Vec<ContractionGraph>> {
        self.visited += 1;
        let keep = !self.prune || self.bound.eval(self.f, node) > incumbent.value();
        if keep {
            let v = graph_value(self.f, node);
            if v > incumbent.value() {
                incumbent.offer(v, node);
            }
        } else {
            self.pruned += 1;
        }
        if self.progress_interval > 0 && self.visited.is_multiple_of(self.progress_interval) {
            if let Some(cb) = self.on_progress.as_mut() {
                cb(&Progress {
                    nodes_visited: self.visited,
                    nodes_pruned: self.pruned,
                    best_value: incumbent.value(),
                    elapsed: self.start.elapsed(),
                });
            }
        }
        keep.then(|| node.children())
    }

    /// Runs until the stack empties (returns `true`) or a limit is hit
    /// (returns `false`, leaving the unexplored frontier on the stack).
    pub fn run(&mut self, stack: &mut Vec<ContractionGraph>, incumbent: &mut impl Incumbent) -> bool {
        loop {
            if self.visited > 0 {
                if let Some(d) = self.limits.deadline {
                    if Instant::now() >= d {
                        return stack.is_empty();
                    }
                }
            }
            let Some(node) = stack.pop() else {
                return true;
            };
            let Some(children) = self.visit(&node, incumbent) else {
                continue;
            };
            if children.is_empty() {
                continue;
            }
            if self.limits.max_expansions.is_some_and(|m| self.expansions >= m) {
                stack.push(node);
                return false;
            }
            self.expansions += 1;
            stack.extend(children.into_iter().rev());
        }
    }
}
