//! Hard Lefschetz computations for Schubert bases of flag varieties.

pub mod error;
pub mod bruhatgraph;
pub mod exactalg;
pub mod lefschetz;
pub mod modularsl2;
pub mod rootdata;
pub mod scalar;
pub mod schubert;
pub mod weyl;

pub use exactalg::{ExtField, Gf, Matrix, Monomial, MultiPoly};
pub use scalar::{Field, Fp, Ring};

/// Polynomials with integer coefficients.
pub type IntPoly = MultiPoly<num_bigint::BigInt>;
/// Polynomials over a prime field.
pub type FpPoly = MultiPoly<Fp>;
/// Integer matrices.
pub type IntMatrix = Matrix<num_bigint::BigInt>;
/// Matrices over a prime field.
pub type FpMatrix = Matrix<Fp>;
