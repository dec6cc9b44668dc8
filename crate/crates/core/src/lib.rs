//! Exact arithmetic for deciding when a monic polynomial splits completely
//! modulo a prime ideal, using the Newton power sums of its roots.
//!
//! For a monic irreducible `f` of degree `k` over a number field `K`, with
//! power sums `T_n = α_1^n + … + α_k^n`, the congruence
//! `T_{N(𝔭)+1} ≡ T_2 (mod 𝔭)` characterises the primes `𝔭` where `f` is
//! totally split, except for the primes dividing an explicit obstruction
//! value built from the conjugacy classes of the symmetric group. This crate
//! computes every ingredient exactly:
//!
//! * [`arith`]: polynomials over exact rings, resultants, Newton's identities,
//!   integer factorization.
//! * [`ff`]: finite fields `𝔽_{p^d}`, polynomial gcd, root counting and
//!   Cantor–Zassenhaus factorization.
//! * [`nf`]: number fields `ℚ[Y]/(g)` in the power basis, residue primes,
//!   norms and complex embeddings.
//! * [`newton`]: the power-sum recurrence, evaluated exactly or modulo a
//!   residue prime (companion matrix or trace of `X^n`).
//! * [`ball`]: arbitrary-precision complex ball arithmetic, certified root
//!   isolation and exact reconstruction of integral quantities.
//! * [`galois`]: the class products, group products, closed forms for
//!   `k ≤ 4` and the exclusion value.
//! * [`criterion`]: the splitting oracle, the congruence test and prime scans.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod ball;
pub mod criterion;
mod error;
pub mod ff;
pub mod galois;
pub mod newton;
pub mod nf;

pub use error::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;
