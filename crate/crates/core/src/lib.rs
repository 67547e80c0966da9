//! Strong orientations of bridgeless graphs with small directed diameter.
//!
//! The pipeline grows a small bridgeless core subgraph around which every
//! vertex lies within bounded distance ([`growth`]), orients the core with a
//! DFS strong orientation ([`orientation::robbins_orient`]) and then extends
//! that orientation to the whole graph ([`extension`]). The resulting
//! directed diameter is at most `(2g + ε)·n/h(δ, g) + 4·C(Lg + 1, 2)`
//! ([`bounds`]). Exhaustive search in [`oracle`] gives exact optima for
//! small graphs.

pub mod bounds;
pub mod error;
pub mod experiment;
pub mod extension;
pub mod generators;
pub mod graph;
pub mod growth;
pub mod oracle;
pub mod orientation;
pub mod pipeline;
pub mod trace;

pub use error::{Error, Result};
pub use graph::{Edge, EdgeSet, Graph, Path, Subgraph};
pub use orientation::{robbins_orient, Direction, Orientation};
