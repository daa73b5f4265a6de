//! Topological machinery for graphs: vertex filtrations, persistent homology
//! in dimensions 0 and 1 with provenance, general Z₂ persistence over clique
//! complexes, Weisfeiler-Lehman refinement, persistence diagram embeddings and
//! gradient routing from diagrams back to vertex values.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, IO and the
//! command line front end live in the `graphtopo` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod embedding;
mod error;
pub mod filtration;
pub mod grad;
pub mod graph;
pub mod persistence;
pub mod simplicial;
pub mod synth;
mod unionfind;
pub mod wl;

pub use error::{Error, Result};
pub use filtration::{Activation, FiltrationFamily, FiltrationMlp, VertexFiltration};
pub use graph::{BettiPair, Graph};
pub use persistence::{DiagramPair, PersistencePair};
pub use unionfind::UnionFind;
