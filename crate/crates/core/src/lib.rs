//! Exact computations for nilpotent orbits of GL_n(E) acting on gl_n(E) by
//! σ-conjugation, where E/F is a quadratic extension with Galois involution σ.
//!
//! The crate covers Jordan classification of σ-linear nilpotents, induced
//! orbits for standard parabolics, orbit and centralizer dimensions, the
//! exponent structure of the associated zeta integrand, and exact local
//! monomial models of its unramified factors. All arithmetic is exact.

pub mod cli;
pub mod error;
pub mod field;
pub mod linalg;
pub mod orbit;
pub mod parabolic;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
