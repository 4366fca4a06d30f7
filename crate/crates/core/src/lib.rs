//! Embedding bounded-degree oriented spanning trees into randomly perturbed
//! digraphs.
//!
//! A randomly perturbed digraph is the union of a dense base digraph (minimum
//! semidegree at least `αn`) with a sparse binomial random digraph
//! `D(n, c/n)`. The crate builds the constructive route to a spanning copy of
//! a fixed oriented tree in such a graph and the measurements around it:
//!
//! - [`digraph`]: host graphs with mirrored out/in adjacency and bit-vector
//!   membership.
//! - [`tree`]: oriented trees, valid edge orderings, prefix subtrees and
//!   generators.
//! - [`models`]: `D(n,p)`, the mirrored model `D*(n,p)`, dense bases and the
//!   perturbed union.
//! - [`embed`]: the almost-spanning embedder that only uses random edges, plus
//!   uniform injections.
//! - [`absorption`]: star packing, absorbing-star counting and the completion
//!   procedure.
//! - [`concentration`]: closed-form good-star probabilities, the Azuma tail and
//!   Monte Carlo experiments under uniform injections.
//! - [`oracle`]: exhaustive tree containment for small hosts.
//! - [`pipeline`]: end-to-end trials and parameter sweeps.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod absorption;
pub mod concentration;
pub mod digraph;
pub mod embed;
mod error;
pub mod models;
pub mod oracle;
pub mod pipeline;
pub mod seed;
pub mod stats;
pub mod tree;

pub use absorption::{Sign, Star, StarPack};
pub use digraph::Digraph;
pub use embed::{Embedding, RetryPolicy};
pub use error::{Error, Result};
pub use pipeline::{PipelineConfig, TrialRecord};
pub use tree::{EdgeOrdering, OrientedTree};
