//! Special pairs of graph automorphisms and the eigenfunction reduction they
//! induce, for Hamming, Johnson and halved-cube graphs.
//!
//! A special pair `(φ, {V₁, V₂, V₃})` of a graph `G` turns every
//! `λ`-eigenfunction `f` of `G` into the function
//! `y ↦ f(φ₁⁻¹(y)) − f(φ₂⁻¹(y))` on a smaller graph `G₀`, and that function
//! satisfies the eigen-equation of `G₀` at `λ + 1`. This crate builds the
//! graphs and pairs, verifies them with explicit maps, and checks the
//! reduction numerically.
//!
//! ```
//! use spectral_reduce::reduction::{hamming_context, reduce};
//! use spectral_reduce::spectral::{eigendecompose, residual};
//!
//! let ctx = hamming_context(3, 2, 1, 0, 1).unwrap();
//! let spectrum = eigendecompose(ctx.graph()).unwrap();
//! let f = spectrum.sample(-1.0, 42).unwrap();
//! let reduced = reduce(&f, &ctx).unwrap();
//! assert!(residual(ctx.reduced_graph(), &reduced, 0.0).unwrap() < 1e-8);
//! ```

pub mod cli;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod reduction;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{LabeledGraph, VertexLabel, VertexMap};
pub use reduction::{ReductionContext, SpecialPair};
pub use spectral::{Spectrum, VertexFunction};
