//! Arbitrary-precision complex ball arithmetic, certified root isolation and
//! exact reconstruction of integral values.

mod cball;
mod float;
mod mag;
mod reconstruct;
mod roots;

pub use cball::{CBall, CFloat};
pub use float::Float;
pub use mag::Mag;
pub use reconstruct::{embed, reconstruct_integer, reconstruct_nf_element};
pub use roots::{horner, isolate_at, isolate_roots, isolate_with_escalation, CertifiedRoots, MAX_BITS};
