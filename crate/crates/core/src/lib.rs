//! Exact minimum cuts of weighted graphs through a query-charged pipeline:
//! minimum star, cut sparsifier, near-minimum-cut atoms from tree packings,
//! and contraction learning, with generators for hard instance families.

pub mod cutatoms;
pub mod exec;
pub mod graph;
pub mod harness;
pub mod instances;
pub mod pipeline;
pub mod query;
pub mod rng;
pub mod sparsify;
pub mod treepack;
pub mod tworespect;
