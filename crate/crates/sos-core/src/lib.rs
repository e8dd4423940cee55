//! Sós permutations w(n, α): generation, Schensted shapes, the slow Euclidean
//! lattice machinery, and the two-slope prediction of the shape boundary.
//!
//! All geometry is exact. Irrational α enters only through a rational proxy
//! convergent chosen per n, so every comparison is an integer comparison.

pub mod error;
pub mod lattice;
pub mod numeric;
pub mod predictor;
pub mod schensted;
pub mod sosperm;

pub use error::{Error, Result};
