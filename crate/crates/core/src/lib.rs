//! Faces of invariant convex bodies through their restrictions to fat sections.
//!
//! A compact group `G` acts orthogonally on `V`; `Σ ⊆ V` is a fat section with
//! Weyl group `W`. A `G`-invariant convex body `E` is determined by the
//! `W`-invariant body `P = E ∩ Σ`, and faces of `E` correspond to faces of `P`
//! up to the group actions. The crate computes the exact side (orbit
//! polytopes, face lattices) and checks the lifted side numerically.

pub mod correspondence;
pub mod descent;
pub mod error;
pub mod group;
pub mod linalg;
pub mod models;
pub mod polytope;
pub mod registry;
pub mod rng;
pub mod scalar;
pub mod section;
pub mod slice;
pub mod suite;

pub use error::{Error, Result};
