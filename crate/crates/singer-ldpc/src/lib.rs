//! Regular LDPC parity-check matrices from line orbits of PG(n-1,q) under a
//! Singer cycle.
//!
//! The crate builds the projective space PG(n-1,q) on top of exact GF(q^n)
//! arithmetic, decomposes its line set into Singer orbits, computes starter
//! sets (algebraically for any n, geometrically from elliptic quadrics for
//! PG(3,2^e)), and assembles the resulting block-circulant parity-check
//! matrices, with validators for every structural claim along the way.

pub mod codec;
mod error;
pub mod galois;
pub mod orbits;
pub mod pcm;
pub mod projgeom;
pub mod quadrics;
pub mod spreads;

pub use error::{Error, Result};
