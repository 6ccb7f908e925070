//! Exact graphs of rings of measurable functions.
//!
//! The crate builds the zero-divisor, comaximal, annihilator and weakly
//! zero-divisor graphs of `M(X, 𝒜)` over two exactly representable measure
//! spaces (finitely many weighted atoms, and Lebesgue measure on `[0,1)`),
//! computes their invariants and replays the known structural results as
//! executable checks.

#![forbid(unsafe_code)]

pub mod adjacency;
pub mod graph_build;
pub mod graph_metrics;
pub mod harness;
pub mod isomorphism;
pub mod measure_space;
pub mod vertex_universe;
