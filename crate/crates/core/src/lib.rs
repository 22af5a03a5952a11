//! Spectral extremal graph theory for forbidden even cycles.
//!
//! The crate builds the split graphs `S_{n,k} = K_k ∨ K̄_{n-k}` and their
//! one-edge extensions, computes spectral radii and Perron vectors, decides
//! freeness of paths and cycles, enumerates small graphs up to isomorphism
//! to find extremal graphs exactly, and audits the inequalities used in
//! the spectral Turán argument on concrete graphs.

pub mod audit;
pub mod error;
pub mod extremal;
pub mod forbidden;
pub mod graph;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use forbidden::{ForbiddenFamily, SubgraphWitness, WitnessKind};
pub use graph::{construct_named, Family, Graph, VertexSet, VertexSetPair};

pub type SpectralResult64 = spectral::SpectralResult<f64>;
pub type SpectralResult32 = spectral::SpectralResult<f32>;
pub type Constants64 = spectral::Constants<f64>;
pub type ExactConstants = spectral::Constants<num_rational::BigRational>;
pub type WeightClassification64 = spectral::WeightClassification<f64>;
pub type RayleighCertificate64 = spectral::RayleighCertificate<f64>;
