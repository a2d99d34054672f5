//! Sparse spanning subgraphs that preserve strong k-connectivity or strong
//! k-arc-connectivity of dense digraphs, with kn + O(k(k+Δ̄)) edges, where
//! Δ̄ is the maximum degree of the complement of the underlying graph.
//!
//! The crate ships the constructive sparsifier pipeline (dominators, trios,
//! escapers, hubs, absorbers), Menger-style verifiers with witness cuts,
//! greedy minimal-subgraph extraction with density checks, sparse linkage
//! structures, the flow-based optimum h(k,D) for the degree relaxation, and
//! generators for the extremal instance families. Every public construction
//! is paired with an independent checker; see `examples/` for one runnable
//! tour per capability.

pub mod connectivity;
pub mod dominance;
pub mod error;
pub mod flow;
pub mod gadgets;
pub mod generate;
pub mod graph;
pub mod io;
pub mod linkage;
pub mod minimal;
pub mod pipeline;
pub mod util;

pub use error::{Error, Result};
pub use graph::{DirectedMultigraph, EdgeBag, Mode, Path};
