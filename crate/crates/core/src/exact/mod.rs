//! Exact scalar arithmetic in Q(ω), ω a primitive cube root of unity, and
//! dense linear algebra over it.
//!
//! Rationals are arbitrary precision throughout. No floating point value is
//! ever produced by this module.

mod cyclotomic;
mod matrix;
mod modp;
mod span;

pub use cyclotomic::{parse_rational, Cyclotomic, Rational, RationalTuple};
pub use matrix::{Matrix, Rref};
pub use modp::{ModMatrix, ModSpan, PrimeField, MERSENNE_61};
pub use span::Span;
