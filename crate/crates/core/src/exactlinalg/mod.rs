//! Exact linear algebra over a prime field F_p.

mod field;
mod matrix;
pub mod poly;
mod span;
pub mod sparse;

pub use field::{PrimeField, DEFAULT_PRIME};
pub use matrix::{Matrix, Rref};
pub use span::{Echelon, Insert, QuotientSpace};
