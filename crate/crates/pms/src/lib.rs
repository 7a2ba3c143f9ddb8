//! Solvers and an instance toolkit for the PERFECTLY MATCHED SETS problem:
//! given an undirected graph, find the largest pair of disjoint vertex sets
//! `(A, B)` such that every vertex of `A` has exactly one neighbor in `B`
//! and vice versa.
//!
//! The crate provides:
//!
//! - brute-force reference solvers ([`oracle`]) that ground-truth everything
//!   else;
//! - an exact exponential solver with an entropy-balanced crossover between
//!   a subset-completion regime and a perfect-matching-cut regime
//!   ([`exact`]);
//! - fixed-parameter solvers for cluster and co-cluster deletion distance
//!   ([`cluster`], [`cocluster`], with modulator search in [`modulator`]);
//! - a treewidth dynamic program over nice tree decompositions
//!   ([`treewidth`]);
//! - generators for the four hardness-reduction gadget families
//!   ([`reductions`]) and seeded random families ([`generate`]);
//! - parsers and writers for the graph, solution, modulator and tree
//!   decomposition file formats ([`io`], [`treewidth::td`],
//!   [`modulator`]).

pub mod assignment;
pub mod bitset;
pub mod cluster;
pub mod cocluster;
pub mod exact;
pub mod generate;
pub mod graph;
pub mod io;
pub mod matching;
pub mod modulator;
pub mod oracle;
pub mod reductions;
pub mod solution;
pub mod subsets;
pub mod treewidth;

pub use graph::Graph;
pub use solution::{verify_solution, PmsSolution, Violation};

/// Instrumentation counters reported by the solvers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Subsets inspected by the exact/brute-force scans (canonical serial
    /// count: rank of the first hit plus one per k, or the full binomial).
    pub subsets_enumerated: u64,
    /// Entries stored across all sparse DP tables (treewidth solver).
    pub dp_states_stored: u64,
    /// Wall-clock duration of the solve, filled in by callers that time it.
    pub wall_ms: u64,
}
