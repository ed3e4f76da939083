//! Hamiltonian cycles that put two prescribed vertices at distance ⌊n/2⌋ in
//! graphs with minimum degree at least n/2 + 1.

pub mod certificate;
pub mod embedder;
pub mod graph;
pub mod harness;
pub mod io;
pub mod oracle;
pub mod posa;
pub mod regularity;
pub mod seeds;
pub mod solvers;

pub use certificate::{cycle_distance, verify_certificate, CycleCertificate, Rejection, Verdict};
pub use graph::{Density, Graph, GraphBuilder, GraphError, VertexSet};
