//! Exact arithmetic for the combinatorics of isocrystals and their
//! automorphism groups: Kottwitz sets `B(G, mu)`, Newton slope polygons,
//! weight multiplicities of highest-weight representations, stable transfer
//! of strongly regular classes, and the assembly of Harish-Chandra
//! character values from those ingredients.
//!
//! Everything is computed over the rationals (or a quadratic extension of
//! the rationals) with exact big-integer arithmetic; p-adic norms are exact
//! powers of p.  No floats anywhere.
//!
//! The narrative guide under `book/` walks through each layer; the module
//! docs here are the reference.

pub mod chardist;
pub mod error;
pub mod exactnum;
pub mod kottwitz;
pub mod rootdata;
pub mod stconj;
pub mod weights;

mod linalg;
pub mod ratjson;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
