//! Seeded random content: scale-free graphs, breadth-first subgraphs and
//! function parameters.
//!
//! All randomness comes from ChaCha8 seeded with the instance seed. Each kind
//! of content reads its own ChaCha stream so, for example, changing the
//! function kind never changes the graph.

use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FunctionKind, FunctionParams};
use crate::characteristic::{CoalitionSizeParams, EdgeSumParams, EnergyParams};
use crate::error::{GccfError, Result};

pub const STREAM_GRAPH: u64 = 1;
pub const STREAM_PARAMS: u64 = 2;
pub const STREAM_SUBGRAPH: u64 = 3;

pub const DEFAULT_P_SPOT: f64 = -80.0;
pub const DEFAULT_P_FORWARD: f64 = -70.0;
pub const DEFAULT_GAMMA: f64 = 1.3;
pub const DEFAULT_ALPHA: f64 = 2.2;
pub const DEFAULT_SLOTS: usize = 48;
pub const WEIGHT_RANGE: (f64, f64) = (-10.0, 10.0);
pub const DISTANCE_RANGE: (f64, f64) = (0.0, 100.0);

/// Generator for `seed` positioned on `stream`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Barabasi-Albert graph: a clique on `m + 1` nodes, then each new node
/// attaches to `m` distinct existing nodes chosen with probability
/// proportional to degree.
pub fn barabasi_albert(n: usize, m: usize, seed: u64) -> Result<Vec<(usize, usize)>> {
    if m == 0 || m >= n {
        return Err(GccfError::InvalidParameters(format!(
            "Barabasi-Albert needs 1 <= m < n, got m={m}, n={n}"
        )));
    }
    let mut rng = rng_for(seed, STREAM_GRAPH);
    let mut edges = Vec::with_capacity(m * (m + 1) / 2 + (n - m - 1) * m);
    // every edge endpoint once: sampling from it is degree-proportional
    let mut endpoints = Vec::with_capacity(2 * edges.capacity());
    for i in 0..=m {
        for j in i + 1..=m {
            edges.push((i, j));
            endpoints.extend([i, j]);
        }
    }
    let mut targets = Vec::with_capacity(m);
    for v in m + 1..n {
        targets.clear();
        while targets.len() < m {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, v));
            endpoints.extend([t, v]);
        }
    }
    Ok(edges)
}

/// Breadth-first subgraph of `k` nodes from `start`, relabelled by discovery
/// order. Returns `None` if fewer than `k` nodes are reachable.
pub fn bfs_subgraph_from(
    edges: &[(usize, usize)],
    n: usize,
    k: usize,
    start: usize,
) -> Option<Vec<(usize, usize)>> {
    if k == 0 || start >= n {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    for l in &mut adj {
        l.sort_unstable();
        l.dedup();
    }
    let mut label = vec![usize::MAX; n];
    let mut queue = VecDeque::from([start]);
    label[start] = 0;
    let mut count = 1;
    'bfs: while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if count == k {
                break 'bfs;
            }
            if label[y] == usize::MAX {
                label[y] = count;
                count += 1;
                queue.push_back(y);
            }
        }
    }
    if count < k {
        return None;
    }
    let mut out: Vec<(usize, usize)> = edges
        .iter()
        .filter(|&&(i, j)| label[i] != usize::MAX && label[j] != usize::MAX && i != j)
        .map(|&(i, j)| {
            let (a, b) = (label[i], label[j]);
            (a.min(b), a.max(b))
        })
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    out.sort_unstable();
    Some(out)
}

/// Maximum number of random start nodes tried by [`bfs_subgraph`].
pub const BFS_ATTEMPTS: usize = 32;

/// Breadth-first subgraph of `k` nodes from a seeded random start node,
/// retrying from new start nodes when the component is too small.
pub fn bfs_subgraph(edges: &[(usize, usize)], n: usize, k: usize, seed: u64) -> Result<Vec<(usize, usize)>> {
    if k == 0 || k > n {
        return Err(GccfError::InvalidParameters(format!(
            "subgraph size must be in 1..={n}, got {k}"
        )));
    }
    let mut rng = rng_for(seed, STREAM_SUBGRAPH);
    for _ in 0..BFS_ATTEMPTS {
        let start = rng.gen_range(0..n);
        if let Some(sub) = bfs_subgraph_from(edges, n, k, start) {
            return Ok(sub);
        }
    }
    Err(GccfError::InvalidParameters(format!(
        "no start node reached {k} nodes in {BFS_ATTEMPTS} attempts"
    )))
}

/// Synthetic half-hourly consumption: a base load in `[0.1, 1.0]` plus two
/// daily sinusoids of random phase and amplitude in `[0, 1]`, clipped at 0.
pub fn synthetic_profiles(n: usize, slots: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    use std::f64::consts::TAU;
    (0..n)
        .map(|_| {
            let base = rng.gen_range(0.1..=1.0);
            let bumps: [(f64, f64); 2] =
                std::array::from_fn(|_| (rng.gen_range(0.0..=1.0), rng.gen_range(0.0..TAU)));
            (0..slots)
                .map(|t| {
                    let x = TAU * t as f64 / slots as f64;
                    let y = base + bumps.iter().map(|(a, phi)| a * (x + phi).sin()).sum::<f64>();
                    y.max(0.0)
                })
                .collect()
        })
        .collect()
}

/// Random parameters for `kind` with the default constants.
pub fn random_params(kind: FunctionKind, n: usize, edges: &[(usize, usize)], seed: u64) -> FunctionParams {
    let mut rng = rng_for(seed, STREAM_PARAMS);
    match kind {
        FunctionKind::Energy => FunctionParams::Energy(EnergyParams {
            p_spot: DEFAULT_P_SPOT,
            p_forward: DEFAULT_P_FORWARD,
            gamma: DEFAULT_GAMMA,
            profiles: synthetic_profiles(n, DEFAULT_SLOTS, &mut rng),
        }),
        FunctionKind::EdgeSum => {
            let mut seen = HashSet::new();
            let weights = edges
                .iter()
                .map(|&(i, j)| (i.min(j), i.max(j)))
                .filter(|e| seen.insert(*e))
                .map(|(i, j)| (i, j, rng.gen_range(WEIGHT_RANGE.0..=WEIGHT_RANGE.1)))
                .collect();
            FunctionParams::EdgeSum(EdgeSumParams {
                weights,
                gamma: DEFAULT_GAMMA,
            })
        }
        FunctionKind::CoalitionSize => {
            let distances = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                0.0
                            } else {
                                rng.gen_range(DISTANCE_RANGE.0..=DISTANCE_RANGE.1)
                            }
                        })
                        .collect()
                })
                .collect();
            FunctionParams::CoalitionSize(CoalitionSizeParams {
                alpha: DEFAULT_ALPHA,
                distances,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ba_tree_for_m1() {
        let e = barabasi_albert(5, 1, 3).unwrap();
        assert_eq!(e.len(), 4);
        let g = crate::ContractionGraph::from_instance_graph(&e, 5).unwrap();
        assert_eq!(g.residual_components().len(), 1);
    }

    #[test]
    fn ba_rejects_bad_m() {
        assert!(barabasi_albert(20, 25, 0).is_err());
        assert!(barabasi_albert(5, 0, 0).is_err());
    }

    #[test]
    fn ba_deterministic_and_simple() {
        let a = barabasi_albert(50, 3, 11).unwrap();
        assert_eq!(a, barabasi_albert(50, 3, 11).unwrap());
        assert_ne!(a, barabasi_albert(50, 3, 12).unwrap());
        let set: HashSet<_> = a.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
        assert_eq!(set.len(), a.len());
    }

    #[test]
    fn bfs_from_start() {
        let path = [(0, 1), (1, 2), (2, 3)];
        assert_eq!(bfs_subgraph_from(&path, 4, 2, 0).unwrap(), vec![(0, 1)]);
        assert_eq!(bfs_subgraph_from(&path, 4, 1, 2).unwrap(), vec![]);
        assert_eq!(bfs_subgraph_from(&path, 4, 4, 0).unwrap(), path.to_vec());
        assert!(bfs_subgraph_from(&[(0, 1)], 3, 3, 0).is_none());
    }

    #[test]
    fn bfs_retries_then_fails() {
        // two components of size 2 and 3: k=3 is reachable only from the second
        let e = [(0, 1), (2, 3), (3, 4)];
        let sub = bfs_subgraph(&e, 5, 3, 1).unwrap();
        assert_eq!(sub.len(), 2);
        assert!(bfs_subgraph(&e, 5, 4, 1).is_err());
    }

    #[test]
    fn params_in_range() {
        let edges = barabasi_albert(30, 2, 5).unwrap();
        match random_params(FunctionKind::EdgeSum, 30, &edges, 5) {
            FunctionParams::EdgeSum(p) => {
                assert_eq!(p.weights.len(), edges.len());
                assert!(p.weights.iter().all(|w| (-10.0..=10.0).contains(&w.2)));
            }
            _ => unreachable!(),
        }
        match random_params(FunctionKind::CoalitionSize, 30, &edges, 5) {
            FunctionParams::CoalitionSize(p) => {
                for (i, row) in p.distances.iter().enumerate() {
                    assert_eq!(row[i], 0.0);
                    assert!(row.iter().all(|d| (0.0..=100.0).contains(d)));
                }
            }
            _ => unreachable!(),
        }
        match random_params(FunctionKind::Energy, 30, &edges, 5) {
            FunctionParams::Energy(p) => {
                assert_eq!(p.profiles.len(), 30);
                assert!(p.profiles.iter().all(|r| r.len() == 48 && r.iter().all(|&x| x >= 0.0)));
                assert_eq!((p.p_spot, p.p_forward, p.gamma), (-80.0, -70.0, 1.3));
            }
            _ => unreachable!(),
        }
        assert_eq!(
            random_params(FunctionKind::Energy, 30, &edges, 5),
            random_params(FunctionKind::Energy, 30, &edges, 5)
        );
    }
}
