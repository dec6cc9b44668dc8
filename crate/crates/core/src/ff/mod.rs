//! Finite fields `𝔽_{p^d}` and polynomials over them.

mod factor;
mod field;
mod poly;

pub use field::{Fq, FqField};
pub use poly::FqPoly;
