//! Brute-force ground truth for small instances.
//!
//! Enumerates every set partition of the agents as a restricted growth
//! string, keeps those whose blocks are all connected in the instance graph,
//! and maximises `V` directly. Nothing here touches contraction graphs.

use crate::agent_set::AgentSet;
use crate::characteristic::{coalition_structure_value, CharacteristicFunction};
use crate::contraction_graph::CoalitionStructure;
use crate::error::{GccfError, Result};

/// Largest agent count the oracle accepts; Bell(13) is about 2.7e7.
pub const MAX_ORACLE_AGENTS: usize = 13;

fn check_size(n: usize) -> Result<()> {
    if n > MAX_ORACLE_AGENTS {
        return Err(GccfError::InstanceTooLargeForOracle {
            n,
            max: MAX_ORACLE_AGENTS,
        });
    }
    Ok(())
}

/// Calls `visit` with the block masks of every feasible partition, blocks
/// in order of their smallest member.
fn for_each_feasible(edges: &[(usize, usize)], n: usize, mut visit: impl FnMut(&[u32])) -> Result<()> {
    check_size(n)?;
    let mut adj = vec![0u32; n];
    for &(i, j) in edges {
        for index in [i, j] {
            if index >= n {
                return Err(GccfError::InvalidAgentIndex { index, n });
            }
        }
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
    }
    let connected = |block: u32| -> bool {
        let mut reached = block & block.wrapping_neg();
        loop {
            let mut grown = reached;
            let mut rest = reached;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                grown |= adj[i] & block;
            }
            if grown == reached {
                return reached == block;
            }
            reached = grown;
        }
    };

    if n == 0 {
        visit(&[]);
        return Ok(());
    }
    // restricted growth string: rgs[0] = 0, rgs[i] <= 1 + max(rgs[..i])
    let mut rgs = vec![0usize; n];
    let mut prefix_max = vec![0usize; n];
    let mut blocks = vec![0u32; n];
    loop {
        blocks.iter_mut().for_each(|b| *b = 0);
        let mut k = 0;
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b] |= 1 << i;
            k = k.max(b + 1);
        }
        if blocks[..k].iter().all(|&b| connected(b)) {
            visit(&blocks[..k]);
        }
        // next string
        let mut i = n - 1;
        loop {
            if i == 0 {
                return Ok(());
            }
            if rgs[i] <= prefix_max[i - 1] {
                rgs[i] += 1;
                prefix_max[i] = prefix_max[i - 1].max(rgs[i]);
                for j in i + 1..n {
                    rgs[j] = 0;
                    prefix_max[j] = prefix_max[i];
                }
                break;
            }
            i -= 1;
        }
    }
}

fn to_structure(blocks: &[u32], n: usize) -> CoalitionStructure {
    CoalitionStructure::new(
        blocks
            .iter()
            .map(|&b| AgentSet::from_agents(n, (0..n).filter(|&i| b & (1 << i) != 0)))
            .collect(),
    )
}

/// Every feasible coalition structure, each exactly once.
pub fn enumerate_feasible_partitions(
    edges: &[(usize, usize)],
    n: usize,
) -> Result<Vec<CoalitionStructure>> {
    let mut out = Vec::new();
    for_each_feasible(edges, n, |b| out.push(to_structure(b, n)))?;
    Ok(out)
}

/// Number of feasible coalition structures.
pub fn count_feasible_partitions(edges: &[(usize, usize)], n: usize) -> Result<u64> {
    let mut count = 0;
    for_each_feasible(edges, n, |_| count += 1)?;
    Ok(count)
}

/// Best feasible structure and its value; ties go to the first in
/// enumeration order.
pub fn brute_force_optimum<F: CharacteristicFunction + ?Sized>(
    edges: &[(usize, usize)],
    n: usize,
    f: &F,
) -> Result<(CoalitionStructure, f64)> {
    let mut best: Option<(CoalitionStructure, f64)> = None;
    for_each_feasible(edges, n, |b| {
        let cs = to_structure(b, n);
        let v = coalition_structure_value(f, &cs);
        if best.as_ref().is_none_or(|(_, bv)| v > *bv) {
            best = Some((cs, v));
        }
    })?;
    Ok(best.expect("at least one partition exists"))
}

/// Largest agent count [`count_connected_partitions`] accepts.
pub const MAX_COUNT_AGENTS: usize = 64;

/// Number of feasible coalition structures, counted by dynamic programming
/// over agent subsets rather than by listing partitions.
///
/// For a vertex set `S`, the count factors over the connected components of
/// `S`; for a connected `S` with lowest vertex `x` it is the sum, over every
/// connected `C` with `x in C`, of the count for `S \ C`.
pub fn count_connected_partitions(edges: &[(usize, usize)], n: usize) -> Result<u128> {
    if n > MAX_COUNT_AGENTS {
        return Err(GccfError::InstanceTooLargeForOracle {
            n,
            max: MAX_COUNT_AGENTS,
        });
    }
    let mut adj = vec![0u64; n];
    for &(i, j) in edges {
        for index in [i, j] {
            if index >= n {
                return Err(GccfError::InvalidAgentIndex { index, n });
            }
        }
        if i != j {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo = std::collections::HashMap::new();
    Ok(count_set(&adj, full, &mut memo))
}

fn component_of(adj: &[u64], within: u64, start: u64) -> u64 {
    let mut reached = start;
    loop {
        let mut grown = reached;
        let mut rest = reached;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            grown |= adj[i] & within;
        }
        if grown == reached {
            return reached;
        }
        reached = grown;
    }
}

fn count_set(adj: &[u64], set: u64, memo: &mut std::collections::HashMap<u64, u128>) -> u128 {
    let mut rest = set;
    let mut product = 1u128;
    while rest != 0 {
        let comp = component_of(adj, rest, rest & rest.wrapping_neg());
        rest &= !comp;
        product *= count_connected(adj, comp, memo);
    }
    product
}

fn count_connected(adj: &[u64], set: u64, memo: &mut std::collections::HashMap<u64, u128>) -> u128 {
    if set.count_ones() <= 1 {
        return 1;
    }
    if let Some(&c) = memo.get(&set) {
        return c;
    }
    let low = set & set.wrapping_neg();
    let mut total = 0u128;
    // connected subsets containing `low`: grow from `low`, each frontier vertex
    // either joins or is excluded for the rest of the branch
    let mut stack = vec![(low, 0u64)];
    while let Some((block, excluded)) = stack.pop() {
        total += count_set(adj, set & !block, memo);
        let mut frontier = 0u64;
        let mut b = block;
        while b != 0 {
            let i = b.trailing_zeros() as usize;
            b &= b - 1;
            frontier |= adj[i];
        }
        frontier &= set & !block & !excluded;
        let mut ex = excluded;
        while frontier != 0 {
            let v = frontier & frontier.wrapping_neg();
            frontier &= frontier - 1;
            stack.push((block | v, ex));
            ex |= v;
        }
    }
    memo.insert(set, total);
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
    }

    #[test]
    fn bell_numbers() {
        let bell = [1u64, 1, 2, 5, 15, 52, 203, 877];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(count_feasible_partitions(&complete(n), n).unwrap(), b, "n={n}");
        }
    }

    #[test]
    fn small_graphs() {
        assert_eq!(count_feasible_partitions(&[(0, 1), (1, 2), (0, 2)], 3).unwrap(), 5);
        let p = enumerate_feasible_partitions(&[(0, 1), (1, 2)], 3).unwrap();
        let blocks: Vec<_> = p.iter().map(|cs| cs.blocks()).collect();
        assert_eq!(blocks.len(), 4);
        assert!(!blocks.contains(&vec![vec![0, 2], vec![1]]));
        assert_eq!(count_feasible_partitions(&[(0, 1), (1, 2), (2, 3), (0, 3)], 4).unwrap(), 12);
    }

    #[test]
    fn dp_count_matches_listing() {
        let bell = [1u128, 1, 2, 5, 15, 52, 203, 877, 4140];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(count_connected_partitions(&complete(n), n).unwrap(), b);
        }
        let mut state = 12345u64;
        for n in 2..=10 {
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if state >> 62 == 0 {
                        edges.push((i, j));
                    }
                }
            }
            assert_eq!(
                count_connected_partitions(&edges, n).unwrap(),
                count_feasible_partitions(&edges, n).unwrap() as u128,
                "n={n} edges={edges:?}"
            );
        }
    }

    #[test]
    fn guard() {
        assert!(matches!(
            count_feasible_partitions(&[], 14),
            Err(GccfError::InstanceTooLargeForOracle { n: 14, .. })
        ));
    }
}
