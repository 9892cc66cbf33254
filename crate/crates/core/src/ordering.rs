//! Edge ordering by recursive balanced bisection.
//!
//! The graph is cut into two halves of nearly equal size; the edges of the
//! cut-set get the next consecutive ranks and each half with at least two
//! vertices is queued (FIFO) to be cut in turn. Contracting in this order
//! turns cut-sets red early, which splits the residual components and
//! tightens the subtree bound.
//!
//! [`cut`] grows a breadth-first region from a pseudo-peripheral vertex until
//! it holds half the vertices, then runs one pass of Kernighan-Lin style
//! boundary swaps. Ties always go to the lowest vertex id.

use std::collections::VecDeque;

use crate::contraction_graph::ContractionGraph;
use crate::error::{GccfError, Result};

/// A vertex subset of some host graph together with its induced edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    /// Sorted, distinct vertex ids.
    pub vertices: Vec<usize>,
    /// Induced edges `(a, b)` with `a < b`.
    pub edges: Vec<(usize, usize)>,
}

impl Subgraph {
    pub fn new(mut vertices: Vec<usize>, edges: &[(usize, usize)]) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        let mut edges: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .filter(|&(a, b)| {
                a != b && vertices.binary_search(&a).is_ok() && vertices.binary_search(&b).is_ok()
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Subgraph { vertices, edges }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub part_a: Vec<usize>,
    pub part_b: Vec<usize>,
    /// Crossing edges, sorted.
    pub cut_set: Vec<(usize, usize)>,
}

/// Local adjacency over positions `0..k` of a subgraph's vertex list.
struct Local {
    adj: Vec<Vec<usize>>,
}

impl Local {
    fn new(sub: &Subgraph) -> Self {
        let pos = |v: usize| sub.vertices.binary_search(&v).unwrap();
        let mut adj = vec![Vec::new(); sub.vertices.len()];
        for &(a, b) in &sub.edges {
            let (pa, pb) = (pos(a), pos(b));
            adj[pa].push(pb);
            adj[pb].push(pa);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        Local { adj }
    }

    /// BFS order from `start` over vertices not yet `taken`.
    fn bfs(&self, start: usize, taken: &mut [bool]) -> Vec<usize> {
        let mut order = vec![start];
        taken[start] = true;
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in &self.adj[x] {
                if !taken[y] {
                    taken[y] = true;
                    order.push(y);
                }
            }
        }
        order
    }
}

/// Two-way balanced partition of a subgraph with at least two vertices.
///
/// A disconnected subgraph is split along its components (the component of
/// the lowest vertex against the rest) with an empty cut-set.
pub fn cut(sub: &Subgraph) -> Result<CutResult> {
    let k = sub.vertices.len();
    if k < 2 {
        return Err(GccfError::InvalidParameters(
            "cut needs at least two vertices".into(),
        ));
    }
    let local = Local::new(sub);
    let mut side_a = vec![false; k];

    let first = local.bfs(0, &mut vec![false; k]);
    if first.len() < k {
        for &x in &first {
            side_a[x] = true;
        }
    } else {
        let start = *first.last().unwrap();
        let order = local.bfs(start, &mut vec![false; k]);
        for &x in order.iter().take(k / 2) {
            side_a[x] = true;
        }
        refine(&local, &mut side_a);
    }

    let collect = |want: bool| -> Vec<usize> {
        (0..k)
            .filter(|&x| side_a[x] == want)
            .map(|x| sub.vertices[x])
            .collect()
    };
    let cut_set = sub
        .edges
        .iter()
        .copied()
        .filter(|&(a, b)| {
            let pa = sub.vertices.binary_search(&a).unwrap();
            let pb = sub.vertices.binary_search(&b).unwrap();
            side_a[pa] != side_a[pb]
        })
        .collect();
    Ok(CutResult {
        part_a: collect(true),
        part_b: collect(false),
        cut_set,
    })
}

/// One pass of pairwise boundary swaps, each vertex moved at most once and
/// only while the swap strictly reduces the cut.
fn refine(local: &Local, side_a: &mut [bool]) {
    let k = side_a.len();
    // external minus internal degree
    let mut d: Vec<i64> = (0..k)
        .map(|x| {
            local.adj[x]
                .iter()
                .map(|&y| if side_a[y] == side_a[x] { -1 } else { 1 })
                .sum()
        })
        .collect();
    let mut locked = vec![false; k];
    loop {
        let best_on = |want: bool, d: &[i64], locked: &[bool]| {
            (0..k)
                .filter(|&x| side_a[x] == want && !locked[x] && d[x] > -(local.adj[x].len() as i64))
                .max_by_key(|&x| (d[x], std::cmp::Reverse(x)))
        };
        let Some(a) = best_on(true, &d, &locked) else {
            break;
        };
        // best partner for a, accounting for a shared edge
        let partner = (0..k)
            .filter(|&y| !side_a[y] && !locked[y])
            .map(|y| {
                let shared = local.adj[a].binary_search(&y).is_ok() as i64;
                (d[a] + d[y] - 2 * shared, y)
            })
            .max_by_key(|&(g, y)| (g, std::cmp::Reverse(y)));
        let Some((gain, b)) = partner else {
            break;
        };
        if gain <= 0 {
            break;
        }
        for x in [a, b] {
            side_a[x] = !side_a[x];
            locked[x] = true;
        }
        for x in [a, b] {
            d[x] = -d[x];
            for &y in &local.adj[x] {
                if y == a || y == b {
                    continue;
                }
                // x changed side: y's edge to x flipped between internal and external
                d[y] += if side_a[y] == side_a[x] { -2 } else { 2 };
            }
        }
        // a and b are adjacent: both flipped, so their shared edge is still external
        if local.adj[a].binary_search(&b).is_ok() {
            d[a] += 2;
            d[b] += 2;
        }
    }
}

/// Reassigns order ranks of an uncontracted graph by recursive bisection.
pub fn order_edges(g: &ContractionGraph) -> Result<ContractionGraph> {
    if !g.is_uncontracted() {
        return Err(GccfError::InvalidParameters(
            "edge ordering needs an uncontracted graph".into(),
        ));
    }
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let mut rank_of = std::collections::HashMap::with_capacity(edges.len());
    let mut next = 0usize;
    let mut queue = VecDeque::new();
    if g.n_agents() >= 2 {
        queue.push_back(Subgraph::new((0..g.n_agents()).collect(), &edges));
    }
    while let Some(sub) = queue.pop_front() {
        let CutResult {
            part_a,
            part_b,
            cut_set,
        } = cut(&sub)?;
        for e in cut_set {
            rank_of.insert(e, next);
            next += 1;
        }
        for part in [part_a, part_b] {
            if part.len() > 1 {
                queue.push_back(Subgraph::new(part, &sub.edges));
            }
        }
    }
    debug_assert_eq!(next, edges.len());
    let ranks: Vec<usize> = edges.iter().map(|e| rank_of[e]).collect();
    g.clone().with_ranks(&ranks)
}
