//! Hypergraph extremal-combinatorics toolkit: independence numbers of
//! omitting systems, sunflower-free decomposition, finite-field
//! pseudorandom constructions and Ramsey certificates for the k-Fan.

pub mod constructions;
pub mod error;
pub mod field;
pub mod harness;
pub mod hypergraph;
pub mod oracles;
pub mod processes;
pub mod scalar;
pub mod seed;
pub mod spectral;

pub use error::{Error, Result};
pub use field::{build_polynomial_graph, BipartiteGraph, FieldPoly};
pub use hypergraph::{cartesian_product, Hypergraph, Vertex};
pub use oracles::{Witness, WitnessKind};
pub use scalar::Scalar;

pub type Spectrum = spectral::SpectrumReport<f64>;
pub type Mixing = spectral::MixingReport<f64>;
pub type Audit = oracles::DlrAudit<f64>;
