//! Graph-constrained coalition formation.
//!
//! Agents sit on the vertices of a graph and may only form coalitions that
//! induce connected subgraphs. This crate searches the space of feasible
//! coalition structures by edge contraction on two-coloured graphs and prunes
//! it with branch and bound for m+a characteristic functions (a superadditive
//! part plus a subadditive part).
//!
//! ```
//! use gccf::{cfss, enumerate, order_edges, BoundKind, FunctionKind, InstanceSpec};
//!
//! let spec = InstanceSpec::barabasi_albert(10, 2, FunctionKind::Energy, 7).unwrap();
//! let f = spec.characteristic().unwrap();
//! let root = order_edges(&spec.root_graph().unwrap()).unwrap();
//!
//! let exact = cfss(&root, &f, BoundKind::General).unwrap();
//! let all = enumerate(&root, &f).unwrap();
//! assert_eq!(exact.best_value, all.best_value);
//! assert!(exact.nodes_visited <= all.nodes_visited);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod agent_set;
pub mod characteristic;
pub mod cli;
pub mod contraction_graph;
pub mod error;
pub mod instances;
pub mod oracle;
pub mod ordering;
pub mod search;

pub use agent_set::AgentSet;
pub use characteristic::{
    bound_edge_sum, bound_m, Characteristic, CharacteristicFunction, CoalitionSizeFunction,
    CoalitionSizeParams, EdgeSumFunction, EdgeSumParams, EnergyFunction, EnergyParams,
};
pub use contraction_graph::{CoalitionStructure, ContractionGraph, Edge, EdgeColour};
pub use error::{GccfError, Result};
pub use instances::{FunctionKind, FunctionParams, InstanceSpec};
pub use ordering::{cut, order_edges, CutResult, Subgraph};
pub use search::{
    cfss, cfss_anytime, cfss_parallel, count_structures, enumerate, BoundKind, Budget,
    ParallelConfig, Progress, SearchOptions, SolveReport,
};
