//! Two-coloured contraction graphs.
//!
//! A [`ContractionGraph`] is one node of the search tree: its vertices are the
//! coalitions of a feasible coalition structure and its edges say which pairs
//! of coalitions may still be merged (green) and which never will be (red).
//! Contracting a green edge merges two coalitions; marking an edge red records
//! the decision not to. Together they enumerate every connected partition of
//! the instance graph exactly once.
//!
//! Vertices are always kept sorted by their smallest agent: a merged vertex
//! takes the position of its lower endpoint. Edges are kept sorted by order
//! rank, which is also the order in which [`ContractionGraph::children`]
//! contracts them.

use std::fmt;

use crate::agent_set::AgentSet;
use crate::error::{GccfError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeColour {
    Green,
    Red,
}

/// An edge between two vertex positions, `u < v`.
///
/// `w_plus` and `w_minus` accumulate the positive and negative instance-edge
/// weights folded into this edge. They stay zero unless weights were attached
/// with [`ContractionGraph::with_edge_weights`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub colour: EdgeColour,
    pub rank: usize,
    pub w_plus: f64,
    pub w_minus: f64,
}

impl Edge {
    pub fn is_green(&self) -> bool {
        self.colour == EdgeColour::Green
    }
}

#[derive(Clone, PartialEq)]
pub struct ContractionGraph {
    n_agents: usize,
    vertices: Vec<AgentSet>,
    edges: Vec<Edge>,
}

/// A partition of the agents into coalitions, blocks sorted by smallest member.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoalitionStructure {
    coalitions: Vec<AgentSet>,
}

impl CoalitionStructure {
    /// Builds a structure from arbitrary blocks, sorting them canonically.
    pub fn new(mut coalitions: Vec<AgentSet>) -> Self {
        coalitions.sort_by_key(|c| c.min_agent());
        CoalitionStructure { coalitions }
    }

    pub fn singletons(n: usize) -> Self {
        CoalitionStructure {
            coalitions: (0..n).map(|i| AgentSet::singleton(n, i)).collect(),
        }
    }

    pub fn coalitions(&self) -> &[AgentSet] {
        &self.coalitions
    }

    pub fn len(&self) -> usize {
        self.coalitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coalitions.is_empty()
    }

    /// Blocks as sorted agent lists, blocks ordered by smallest member.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.coalitions.iter().map(AgentSet::to_vec).collect()
    }

    /// True when the blocks are disjoint, non-empty and cover `0..n`.
    pub fn is_partition_of(&self, n: usize) -> bool {
        let mut seen = AgentSet::empty(n);
        for c in &self.coalitions {
            if c.is_empty() || !c.is_disjoint(&seen) {
                return false;
            }
            seen.union_with(c);
        }
        seen.len() == n && seen.iter().all(|a| a < n)
    }

    /// True when every block induces a connected subgraph of the instance
    /// graph given by `edges`.
    pub fn is_feasible(&self, edges: &[(usize, usize)], n: usize) -> bool {
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        self.coalitions.iter().all(|c| {
            let Some(start) = c.min_agent() else {
                return false;
            };
            let mut reached = AgentSet::singleton(n, start);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if c.contains(y) && !reached.contains(y) {
                        reached.insert(y);
                        stack.push(y);
                    }
                }
            }
            reached.len() == c.len()
        })
    }
}

impl fmt::Debug for CoalitionStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coalitions.iter()).finish()
    }
}

impl fmt::Display for CoalitionStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coalitions.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str("{")?;
            for (i, a) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

impl ContractionGraph {
    /// Builds the root of the search tree: one singleton vertex per agent and
    /// one green edge per distinct input pair, ranked by first appearance.
    pub fn from_instance_graph(edges: &[(usize, usize)], n: usize) -> Result<Self> {
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        let mut out = Vec::with_capacity(edges.len());
        for &(i, j) in edges {
            for index in [i, j] {
                if index >= n {
                    return Err(GccfError::InvalidAgentIndex { index, n });
                }
            }
            if i == j {
                return Err(GccfError::InvalidParameters(format!(
                    "self-loop on agent {i}"
                )));
            }
            let key = (i.min(j), i.max(j));
            if seen.insert(key) {
                out.push(Edge {
                    u: key.0,
                    v: key.1,
                    colour: EdgeColour::Green,
                    rank: out.len(),
                    w_plus: 0.0,
                    w_minus: 0.0,
                });
            }
        }
        Ok(ContractionGraph {
            n_agents: n,
            vertices: (0..n).map(|i| AgentSet::singleton(n, i)).collect(),
            edges: out,
        })
    }

    pub fn n_agents(&self) -> usize {
        self.n_agents
    }

    pub fn vertices(&self) -> &[AgentSet] {
        &self.vertices
    }

    /// Edges in ascending order rank.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn green_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_green()).count()
    }

    /// Whether every vertex is still a single agent.
    pub fn is_uncontracted(&self) -> bool {
        self.vertices.len() == self.n_agents
    }

    /// Position of the edge joining vertices `a` and `b`, in either order.
    pub fn find_edge(&self, a: usize, b: usize) -> Option<usize> {
        let (u, v) = (a.min(b), a.max(b));
        self.edges.iter().position(|e| e.u == u && e.v == v)
    }

    /// The current coalition structure: one coalition per vertex.
    pub fn as_coalition_structure(&self) -> CoalitionStructure {
        CoalitionStructure {
            coalitions: self.vertices.clone(),
        }
    }

    /// Replaces order ranks. `ranks[k]` is the new rank of the edge currently
    /// at position `k`; ranks must be a permutation of `0..edges.len()`.
    pub fn with_ranks(mut self, ranks: &[usize]) -> Result<Self> {
        if ranks.len() != self.edges.len() {
            return Err(GccfError::InvalidParameters(format!(
                "expected {} ranks, got {}",
                self.edges.len(),
                ranks.len()
            )));
        }
        let mut seen = vec![false; ranks.len()];
        for &r in ranks {
            if r >= ranks.len() || std::mem::replace(&mut seen[r], true) {
                return Err(GccfError::InvalidParameters(
                    "ranks are not a permutation".into(),
                ));
            }
        }
        for (e, &r) in self.edges.iter_mut().zip(ranks) {
            e.rank = r;
        }
        self.edges.sort_by_key(|e| e.rank);
        Ok(self)
    }

    /// Folds instance-edge weights into per-edge `w_plus`/`w_minus`
    /// accumulators. Weights on pairs inside one vertex are ignored.
    pub fn with_edge_weights(mut self, weights: &[(usize, usize, f64)]) -> Result<Self> {
        let mut owner = vec![usize::MAX; self.n_agents];
        for (pos, c) in self.vertices.iter().enumerate() {
            for a in c {
                owner[a] = pos;
            }
        }
        for e in &mut self.edges {
            e.w_plus = 0.0;
            e.w_minus = 0.0;
        }
        for &(i, j, w) in weights {
            for index in [i, j] {
                if index >= self.n_agents {
                    return Err(GccfError::InvalidAgentIndex {
                        index,
                        n: self.n_agents,
                    });
                }
            }
            let (a, b) = (owner[i], owner[j]);
            if a == b {
                continue;
            }
            let k = self.find_edge(a, b).ok_or(GccfError::NoSuchEdge(a, b))?;
            if w >= 0.0 {
                self.edges[k].w_plus += w;
            } else {
                self.edges[k].w_minus += w;
            }
        }
        Ok(self)
    }

    /// Contracts the green edge joining vertices `a` and `b`, returning a new
    /// graph.
    pub fn green_edge_contraction(&self, a: usize, b: usize) -> Result<Self> {
        let k = self.find_edge(a, b).ok_or(GccfError::NoSuchEdge(a, b))?;
        if !self.edges[k].is_green() {
            return Err(GccfError::RedContractionForbidden(a, b));
        }
        Ok(self.contract_at(k))
    }

    /// Contracts the edge at position `k` regardless of colour.
    pub(crate) fn contract_at(&self, k: usize) -> Self {
        let Edge { u, v, .. } = self.edges[k];
        let mut vertices = Vec::with_capacity(self.vertices.len() - 1);
        for (pos, c) in self.vertices.iter().enumerate() {
            if pos == u {
                vertices.push(c.union(&self.vertices[v]));
            } else if pos != v {
                vertices.push(c.clone());
            }
        }
        let remap = |x: usize| match x.cmp(&v) {
            std::cmp::Ordering::Less => x,
            std::cmp::Ordering::Equal => u,
            std::cmp::Ordering::Greater => x - 1,
        };

        // slot[x] = index in `edges` of the edge joining the merged vertex to x
        let mut slot = vec![usize::MAX; vertices.len()];
        let mut edges: Vec<Edge> = Vec::with_capacity(self.edges.len() - 1);
        for (idx, e) in self.edges.iter().enumerate() {
            if idx == k {
                continue;
            }
            let (x, y) = (remap(e.u), remap(e.v));
            let (x, y) = (x.min(y), x.max(y));
            let other = if x == u {
                Some(y)
            } else if y == u {
                Some(x)
            } else {
                None
            };
            match other {
                Some(o) if slot[o] != usize::MAX => {
                    // edges are rank-sorted, so the kept edge has the smaller rank
                    let merged = &mut edges[slot[o]];
                    if e.colour == EdgeColour::Red {
                        merged.colour = EdgeColour::Red;
                    }
                    merged.w_plus += e.w_plus;
                    merged.w_minus += e.w_minus;
                }
                _ => {
                    if let Some(o) = other {
                        slot[o] = edges.len();
                    }
                    edges.push(Edge { u: x, v: y, ..*e });
                }
            }
        }
        ContractionGraph {
            n_agents: self.n_agents,
            vertices,
            edges,
        }
    }

    /// Child nodes in the search tree, one per green edge in ascending rank.
    /// Each child contracts its edge after all earlier green edges were
    /// marked red.
    pub fn children(&self) -> Vec<ContractionGraph> {
        let mut working = self.clone();
        let mut out = Vec::new();
        for k in 0..working.edges.len() {
            if working.edges[k].is_green() {
                out.push(working.contract_at(k));
                working.edges[k].colour = EdgeColour::Red;
            }
        }
        out
    }

    /// For each vertex, the index of its green-connected component; components
    /// are numbered in order of their lowest vertex.
    pub(crate) fn green_component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in self.edges.iter().filter(|e| e.is_green()) {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut root_label = vec![usize::MAX; n];
        let mut count = 0;
        for x in 0..n {
            let r = find(&mut parent, x);
            if root_label[r] == usize::MAX {
                root_label[r] = count;
                count += 1;
            }
            label[x] = root_label[r];
        }
        (label, count)
    }

    /// The structure obtained by dropping red edges and contracting every
    /// green one: the connected components of the green subgraph.
    pub fn residual_components(&self) -> CoalitionStructure {
        let (label, count) = self.green_component_labels();
        let mut comps = vec![AgentSet::empty(self.n_agents); count];
        for (pos, c) in self.vertices.iter().enumerate() {
            comps[label[pos]].union_with(c);
        }
        CoalitionStructure::new(comps)
    }
}

impl fmt::Debug for ContractionGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ContractionGraph")
            .field("vertices", &self.vertices)
            .field(
                "edges",
                &self
                    .edges
                    .iter()
                    .map(|e| (e.u, e.v, e.colour, e.rank))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, a: &[usize]) -> AgentSet {
        AgentSet::from_agents(n, a.iter().copied())
    }

    fn triangle() -> ContractionGraph {
        ContractionGraph::from_instance_graph(&[(0, 1), (1, 2), (0, 2)], 3).unwrap()
    }

    fn count_tree(g: &ContractionGraph) -> usize {
        1 + g.children().iter().map(count_tree).sum::<usize>()
    }

    fn colour_of(g: &ContractionGraph, a: &[usize], b: &[usize]) -> Option<EdgeColour> {
        let n = g.n_agents();
        let pa = g.vertices().iter().position(|c| *c == set(n, a))?;
        let pb = g.vertices().iter().position(|c| *c == set(n, b))?;
        g.find_edge(pa, pb).map(|k| g.edges()[k].colour)
    }

    #[test]
    fn builds_singletons_with_green_edges() {
        let g = triangle();
        assert_eq!(g.vertices().len(), 3);
        assert_eq!(g.edges().len(), 3);
        assert!(g.edges().iter().all(Edge::is_green));
        assert_eq!(g.edges().iter().map(|e| e.rank).collect::<Vec<_>>(), [0, 1, 2]);
    }

    #[test]
    fn single_agent_and_duplicates() {
        let g = ContractionGraph::from_instance_graph(&[], 1).unwrap();
        assert_eq!(g.vertices(), &[set(1, &[0])]);
        assert!(g.edges().is_empty());

        let g = ContractionGraph::from_instance_graph(&[(0, 1), (1, 0)], 2).unwrap();
        assert_eq!(g.edges().len(), 1);
    }

    #[test]
    fn rejects_bad_indices() {
        let err = ContractionGraph::from_instance_graph(&[(0, 3)], 3).unwrap_err();
        assert!(matches!(err, GccfError::InvalidAgentIndex { index: 3, n: 3 }));
    }

    #[test]
    fn red_edge_survives_merge() {
        // A=0 B=1 C=2 D=3; square A-B, B-C, C-D, D-A plus chord A-C; A-D red
        let mut g = ContractionGraph::from_instance_graph(
            &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)],
            4,
        )
        .unwrap();
        let ad = g.find_edge(0, 3).unwrap();
        g.edges[ad].colour = EdgeColour::Red;

        let h = g.green_edge_contraction(0, 2).unwrap();
        assert_eq!(h.vertices(), &[set(4, &[0, 2]), set(4, &[1]), set(4, &[3])]);
        assert_eq!(colour_of(&h, &[0, 2], &[3]), Some(EdgeColour::Red));
        assert_eq!(colour_of(&h, &[0, 2], &[1]), Some(EdgeColour::Green));
        assert_eq!(h.edges().len(), 2);
        // input unmodified
        assert_eq!(g.vertices().len(), 4);
    }

    #[test]
    fn triangle_contraction_merges_parallel_green_edges() {
        let g = triangle();
        let h = g.green_edge_contraction(0, 2).unwrap();
        assert_eq!(h.vertices(), &[set(3, &[0, 2]), set(3, &[1])]);
        assert_eq!(h.edges().len(), 1);
        assert!(h.edges()[0].is_green());
        // min rank of (0,1)=0 and (1,2)=1
        assert_eq!(h.edges()[0].rank, 0);
    }

    #[test]
    fn contraction_errors() {
        let mut g = triangle();
        assert!(matches!(
            g.green_edge_contraction(0, 0),
            Err(GccfError::NoSuchEdge(0, 0))
        ));
        g.edges[0].colour = EdgeColour::Red;
        assert!(matches!(
            g.green_edge_contraction(1, 0),
            Err(GccfError::RedContractionForbidden(1, 0))
        ));
    }

    #[test]
    fn two_node_collapse() {
        let g = ContractionGraph::from_instance_graph(&[(0, 1)], 2).unwrap();
        let h = g.green_edge_contraction(0, 1).unwrap();
        assert_eq!(h.vertices(), &[set(2, &[0, 1])]);
        assert!(h.edges().is_empty());
    }

    #[test]
    fn square_root_children() {
        // A=0 B=1 C=2 D=3, edges A-B, B-C, A-D, D-C
        let g = ContractionGraph::from_instance_graph(&[(0, 1), (1, 2), (0, 3), (3, 2)], 4)
            .unwrap();
        let ch = g.children();
        assert_eq!(ch.len(), 4);
        let parts: Vec<_> = ch.iter().map(|c| c.as_coalition_structure().blocks()).collect();
        assert_eq!(
            parts,
            vec![
                vec![vec![0, 1], vec![2], vec![3]],
                vec![vec![0], vec![1, 2], vec![3]],
                vec![vec![0, 3], vec![1], vec![2]],
                vec![vec![0], vec![1], vec![2, 3]],
            ]
        );
        // the last child has every remaining edge red
        assert_eq!(ch[3].green_edge_count(), 0);
        assert_eq!(count_tree(&g), 12);
    }

    #[test]
    fn all_red_has_no_children() {
        let mut g = triangle();
        for e in &mut g.edges {
            e.colour = EdgeColour::Red;
        }
        assert!(g.children().is_empty());
    }

    #[test]
    fn triangle_tree_has_five_structures() {
        let g = triangle();
        assert_eq!(g.children().len(), 3);
        assert_eq!(count_tree(&g), 5);
    }

    #[test]
    fn residual_components_cases() {
        let g = triangle();
        assert_eq!(g.residual_components().blocks(), vec![vec![0, 1, 2]]);

        let mut r = g.clone();
        for e in &mut r.edges {
            e.colour = EdgeColour::Red;
        }
        assert_eq!(r.residual_components(), r.as_coalition_structure());

        // two triangles joined by a red bridge
        let mut h = ContractionGraph::from_instance_graph(
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)],
            6,
        )
        .unwrap();
        let k = h.find_edge(2, 3).unwrap();
        h.edges[k].colour = EdgeColour::Red;
        assert_eq!(
            h.residual_components().blocks(),
            vec![vec![0, 1, 2], vec![3, 4, 5]]
        );
    }

    #[test]
    fn coalition_structure_views() {
        let g = triangle();
        assert_eq!(g.as_coalition_structure().blocks(), vec![vec![0], vec![1], vec![2]]);
        let h = g.green_edge_contraction(0, 1).unwrap();
        assert_eq!(h.as_coalition_structure().blocks(), vec![vec![0, 1], vec![2]]);
        let full = h.green_edge_contraction(0, 1).unwrap();
        assert_eq!(full.as_coalition_structure().blocks(), vec![vec![0, 1, 2]]);
        assert_eq!(full.as_coalition_structure().to_string(), "{0,1,2}");
    }

    #[test]
    fn edge_weights_accumulate_on_merge() {
        let g = triangle()
            .with_edge_weights(&[(0, 1, 5.0), (1, 2, -3.0), (0, 2, 0.0)])
            .unwrap();
        let h = g.green_edge_contraction(0, 2).unwrap();
        assert_eq!(h.edges()[0].w_plus, 5.0);
        assert_eq!(h.edges()[0].w_minus, -3.0);
    }

    #[test]
    fn with_ranks_resorts() {
        let g = triangle().with_ranks(&[2, 0, 1]).unwrap();
        let order: Vec<_> = g.edges().iter().map(|e| (e.u, e.v)).collect();
        assert_eq!(order, vec![(1, 2), (0, 2), (0, 1)]);
        assert!(triangle().with_ranks(&[0, 0, 1]).is_err());
    }
}
