//! Exact, witness-checked extremal graph theory at desk scale.
//!
//! The crate is organized around four layers:
//!
//! * [`graph`] — an immutable simple-graph substrate with exact (rational)
//!   density statistics, degeneracy machinery, and bit-exact graph6 I/O.
//! * [`detect`] — searches for bicliques, induced copies and induced
//!   subdivisions that return verifiable certificates rather than bare
//!   booleans.
//! * [`oracle`] — exhaustive canonical enumeration of small graphs and exact
//!   extremal numbers (classical and induced-variant), used as ground truth.
//! * [`pipeline`] / [`chi`] — executable versions of degree-boundedness
//!   extraction procedures and the clique/coloring application, every output
//!   re-verified before it is reported.
//!
//! All randomized procedures are seeded and deterministic; all inequality
//! checks on densities are performed in exact rational arithmetic.

pub mod chi;
pub mod detect;
pub mod exact;
pub mod graph;
pub mod oracle;
pub mod pipeline;
pub mod rng;

pub use graph::{Graph, Orientation, VertexSet};
