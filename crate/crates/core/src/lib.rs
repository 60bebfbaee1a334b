//! Flag-transitive 2-(v,3,λ) designs.
//!
//! Finite fields and geometries, the projective, affine and one-dimensional
//! affine design families, orbit-based certificates for flag-transitivity
//! and permutation rank, and a classifier for parameter pairs `(v, λ)`.

pub mod arith;
pub mod classify;
pub mod cli;
pub mod constructions;
pub mod design;
pub mod error;
pub mod geometry;
pub mod gf;
pub mod perm;

pub use error::{Error, Result};
