//! Graph polynomials on multigraphs and the identities linking them to
//! ferromagnetic Potts correlations.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure
//! computation: exact enumeration over edge subsets, spin configurations
//! and multiplicity vectors, carried out in arbitrary-precision rationals
//! wherever an identity is meant to hold exactly. Floating point appears
//! only in Monte Carlo estimates and in quantities that involve `exp`.
//!
//! Module map:
//!
//! * [`graph`] multigraphs, components, rank/co-rank, multiplicity
//!   expansion, parity and source sets.
//! * [`poly`] Whitney rank-generating function, Tutte polynomial and the
//!   flow polynomial (three independent flow-count routes).
//! * [`potts`] Potts and random-cluster measures by enumeration.
//! * [`poisson`] Poisson multigraphs: sampling, truncated exact
//!   expectations of flow counts with certified tails, and the
//!   correlation/flow identities built on them.
//! * [`currents`] the `q = 2` random-current toolkit: source sets,
//!   switching lemma, products of correlations, Simon inequality.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod currents;
mod dsu;
pub mod error;
pub mod graph;
pub mod limits;
mod math;
pub mod poisson;
pub mod poly;
pub mod potts;

pub use error::{Error, Result};
pub use graph::{Multigraph, Multiplicities, SourceSet, Vertex, VertexSet};
pub use limits::Limits;
pub use poly::ExactScalar;
