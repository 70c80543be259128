//! Tools for k-critical bipartite graphs.
//!
//! A bipartite graph G = (U, V; E) with |U| = n, |V| = m and k = n - m is
//! k-critical when deleting any k vertices of U leaves a graph with a
//! complete matching of V. This crate covers the arithmetic of the
//! admissible (n, m) parameter family, enumeration of that family from any
//! single parameter, edge-minimal biregular constructions, verification
//! along several independent routes, and small-scale optimal search.

pub mod cli;
pub mod construct;
pub mod error;
pub mod graph;
pub mod numth;
pub mod params;
pub mod search;
pub mod selftest;
pub mod verify;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
