//! Nonzero adjacency-tensor spectra of generalized power hypergraphs.
//!
//! A generalized power hypergraph `H^k_s` is built from an `r`-uniform base
//! hypergraph `H` by replacing every vertex with `s` clones and then padding
//! every edge with `k - rs` fresh degree-one vertices. Every nonzero
//! eigenvalue `λ` of its adjacency tensor satisfies `λ^k = β^{rs}` for an
//! eigenvalue `β` of some (induced) subgraph of `H`, so the nonzero spectrum
//! is a finite union of root classes `{λ : λ^k = c}`.
//!
//! The crate is organised bottom-up:
//!
//! * [`hypergraph`]: the uniform hypergraph model, expansion / extension,
//!   vertex and edge removal, canonical forms and subgraph enumeration.
//! * [`tensor`]: matrix-free adjacency tensor application, eigenpair
//!   verification and the eigenvector surgery used to move eigenpairs
//!   between a hypergraph and its subgraphs.
//! * [`spectral`]: adjacency spectra of ordinary graphs, root classes and a
//!   spectral-radius iteration for general uniformity.
//! * [`power`]: the power-hypergraph spectrum engine with constructive
//!   lifting, descent and certification.
//! * [`check`], [`json`], [`plot`]: randomized property harness, file
//!   formats and SVG output used by the `powerspec` binary.

pub mod check;
pub mod error;
pub mod hypergraph;
pub mod json;
pub mod plot;
pub mod power;
pub mod spectral;
pub mod tensor;

pub use error::{Error, Result};
pub use hypergraph::{Edge, UniformHypergraph, VertexId, VertexTag};
pub use num_complex::Complex64;
pub use tensor::{Eigenpair, Tolerances};
