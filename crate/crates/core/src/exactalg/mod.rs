//! Exact arithmetic: prime and extension fields, sparse polynomials,
//! determinants, randomized identity testing and integer factorization.

pub mod factor;
pub mod gf;
pub mod matrix;
pub mod packed;
pub mod pit;
pub mod poly;

pub use gf::{ExtField, Gf};
pub use matrix::Matrix;
pub use packed::PackedSpace;
pub use pit::{pit_nonzero, PitConfig, PitVerdict};
pub use poly::{Monomial, MultiPoly};
