//! Reconfiguration of vertex covers, dominating sets, and independent sets
//! under generalized token-jumping rules.
//!
//! A move relocates up to a budgeted number of tokens, each by a bounded
//! hypergraph distance; two-tier rules let every token slide one step while
//! a few jump farther. The crate provides:
//!
//! - graph and hypergraph primitives ([`graph`]),
//! - a bipartite matching toolkit with Hall violators and minimum-cost
//!   saturating matchings ([`matching`]),
//! - rule semantics, move search, and sequence validation ([`rules`]),
//! - constructive solvers with guaranteed rules per condition ([`solvers`]),
//! - a brute-force reachability oracle ([`oracle`]),
//! - verified lower-bound gadget generators ([`gadgets`]),
//! - hardness reductions and sequence transformations ([`reductions`]),
//! - file formats for instances and sequences ([`io`]).

pub mod error;
pub mod gadgets;
pub mod graph;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod reductions;
pub mod rules;
pub mod solvers;

pub use error::{Error, Result};
pub use graph::{
    bounded_distance_graph, check_condition, closed_neighborhood_hypergraph, contract_through,
    Condition, Configuration, DistanceMatrix, Hypergraph,
};
pub use rules::{Move, Movers, ReconfSequence, RelaxedStep, Rule};
