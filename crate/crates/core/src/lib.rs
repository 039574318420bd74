//! Universal partial orders as executable data structures.
//!
//! Each module implements one concrete order together with embeddings from the
//! word order and decision procedures that can be checked against brute-force
//! oracles:
//!
//! - [`poset`]: finite posets, enumeration, the embedding oracle and the online game;
//! - [`words`]: antichains of binary words, the online word embedding, gaps;
//! - [`intervals`]: finite sets of disjoint rational intervals;
//! - [`convex`]: convex hulls of rational points and convex piecewise-linear functions;
//! - [`grammar`]: the rewriting order on binary trees with 0/1 leaves;
//! - [`vectors`]: truncated 0-1 vectors and the quadratic-size online embedding;
//! - [`periodic`]: power-of-two periodic subsets of the integers;
//! - [`paths`]: the homomorphism order on oriented paths;
//! - [`hfset`] and [`generic`]: hereditarily finite sets and the generic poset built from them.

pub mod convex;
pub mod error;
pub mod generic;
pub mod grammar;
pub mod hfset;
pub mod intervals;
pub mod paths;
pub mod periodic;
pub mod poset;
pub mod rational;
pub mod suite;
pub mod vectors;
pub mod words;

pub use error::{Error, Result};
