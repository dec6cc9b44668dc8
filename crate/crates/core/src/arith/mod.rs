//! Exact integer and polynomial arithmetic.

mod factor;
mod linalg;
mod poly;
mod primes;

use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use factor::{exact_sqrt, factor_integer, perfect_power, FactorEffort, Factorization};
pub use linalg::{det_bareiss, solve_rational};
pub use poly::{discriminant, newton_bootstrap, resultant, Poly, ZPoly};
pub use primes::{is_prime, primes_up_to};

/// Commutative ring with exact division where the quotient exists.
///
/// Elements of some rings (number-field orders) need a context to build
/// constants, so constants are produced from an existing element.
pub trait Ring:
    Clone + PartialEq + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: &BigInt) -> Self;
    fn is_zero(&self) -> bool;
    /// `self / divisor` when the quotient lies in the ring.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;

    fn small_like(&self, n: i64) -> Self {
        self.int_like(&BigInt::from(n))
    }
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }

    fn one_like(&self) -> Self {
        BigInt::one()
    }

    fn int_like(&self, n: &BigInt) -> Self {
        n.clone()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if Zero::is_zero(divisor) {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        Zero::is_zero(&r).then_some(q)
    }
}
