use core::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Mag;

/// Binary floating-point number `man · 2^exp` with an arbitrary-precision
/// mantissa. Ring operations are exact; [`Float::round`] truncates to a
/// requested number of bits and reports the error.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Float {
    man: BigInt,
    exp: i64,
}

impl Float {
    pub fn zero() -> Float {
        Float { man: BigInt::zero(), exp: 0 }
    }

    pub fn new(man: BigInt, exp: i64) -> Float {
        Float { man, exp }.normalized()
    }

    pub fn from_int(n: &BigInt) -> Float {
        Float::new(n.clone(), 0)
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(x: f64) -> Float {
        if x == 0.0 || !x.is_finite() {
            return Float::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1 << 52) - 1);
        let (m, e) = if e == 0 { (frac, -1074) } else { (frac | (1 << 52), e - 1075) };
        Float::new(BigInt::from(m) * sign, e)
    }

    pub fn to_f64(&self) -> f64 {
        if self.man.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits() as i64;
        let shift = (bits - 60).max(0);
        let m = (&self.man >> shift as usize).to_f64().unwrap();
        let e = (self.exp + shift).clamp(-3000, 3000);
        m * libm::exp2(e as f64)
    }

    fn normalized(mut self) -> Float {
        if self.man.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = self.man.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.man >>= tz as usize;
            self.exp += tz as i64;
        }
        self
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    /// Smallest `t` with `|self| < 2^t`; `i64::MIN` for zero.
    pub fn top(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.man.bits() as i64 + self.exp
        }
    }

    pub fn neg(&self) -> Float {
        Float { man: -&self.man, exp: self.exp }
    }

    pub fn abs(&self) -> Float {
        Float { man: self.man.abs(), exp: self.exp }
    }

    pub fn mul_2exp(&self, k: i64) -> Float {
        if self.is_zero() {
            return self.clone();
        }
        Float { man: self.man.clone(), exp: self.exp + k }
    }

    pub fn add(&self, other: &Float) -> Float {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (lo, hi) = if self.exp <= other.exp { (self, other) } else { (other, self) };
        let shift = (hi.exp - lo.exp) as usize;
        Float::new((&hi.man << shift) + &lo.man, lo.exp)
    }

    pub fn sub(&self, other: &Float) -> Float {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Float) -> Float {
        Float::new(&self.man * &other.man, self.exp + other.exp)
    }

    /// Truncates toward zero to at most `prec` mantissa bits; returns the
    /// result and an upper bound for the discarded part.
    pub fn round(&self, prec: u64) -> (Float, Mag) {
        let bits = self.man.bits();
        if bits <= prec {
            return (self.clone(), Mag::ZERO);
        }
        let s = bits - prec;
        let (sign, mag) = (self.man.sign(), self.man.magnitude());
        let kept = mag >> s as usize;
        let exact = (&kept << s as usize) == *mag;
        let man = BigInt::from_biguint(if kept.is_zero() { Sign::NoSign } else { sign }, kept);
        let err = if exact { Mag::ZERO } else { Mag::pow2(self.exp + s as i64) };
        (Float::new(man, self.exp + s as i64), err)
    }

    /// `self + other` rounded to `prec` bits, without materialising the
    /// exact sum when one operand is far below the other's last bit.
    pub fn add_round(&self, other: &Float, prec: u64) -> (Float, Mag) {
        let (big, small) = if self.top() >= other.top() { (self, other) } else { (other, self) };
        if !small.is_zero() && small.top() < big.top() - prec as i64 - 2 {
            let (r, e) = big.round(prec);
            return (r, e.add(small.mag_up()));
        }
        self.add(other).round(prec)
    }

    /// Quotient truncated to about `prec` bits, with its error bound.
    pub fn div(&self, other: &Float, prec: u64) -> (Float, Mag) {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return (Float::zero(), Mag::ZERO);
        }
        let s = (prec as i64 + other.man.bits() as i64 - self.man.bits() as i64 + 2).max(0);
        let num = &self.man << s as usize;
        let (q, r) = num.div_rem(&other.man);
        let exp = self.exp - s - other.exp;
        let err = if r.is_zero() { Mag::ZERO } else { Mag::pow2(exp) };
        (Float::new(q, exp), err)
    }

    pub fn mag_up(&self) -> Mag {
        self.mag(true)
    }

    pub fn mag_down(&self) -> Mag {
        self.mag(false)
    }

    fn mag(&self, up: bool) -> Mag {
        if self.is_zero() {
            return Mag::ZERO;
        }
        let m = self.man.magnitude();
        let bits = m.bits();
        let s = bits.saturating_sub(64);
        let top = (m >> s as usize).to_u128().unwrap();
        let inexact = s > 0 && (m.trailing_zeros().unwrap_or(0) < s);
        let top = if up && inexact { top + 1 } else { top };
        Mag::from_parts(top, self.exp + s as i64, up)
    }

    pub fn from_mag(m: Mag) -> Float {
        Float::new(BigInt::from(m.mantissa()), m.exponent())
    }

    /// Nearest integer, ties away from zero.
    pub fn nearest_integer(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.man << self.exp as usize;
        }
        let s = (-self.exp) as usize;
        let half = BigInt::one() << (s - 1);
        if self.man.is_negative() {
            -((-&self.man + half) >> s)
        } else {
            (&self.man + half) >> s
        }
    }
}

impl PartialOrd for Float {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Float {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sub(other).man.sign().cmp(&Sign::NoSign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_f64_roundtrip() {
        for x in [1.5, -0.1, 3.0e300, 1.0e-310, 1234567.875] {
            assert_eq!(Float::from_f64(x).to_f64(), x);
        }
    }

    #[test]
    fn rounding_error_bounds() {
        let x = Float::from_int(&((BigInt::one() << 200) + 12345));
        let (r, e) = x.round(64);
        let diff = x.sub(&r).abs();
        assert!(diff.mag_up() <= e);
        assert!(r.mantissa().bits() <= 64);
        let (q, e) = Float::from_int(&BigInt::from(1)).div(&Float::from_int(&BigInt::from(3)), 100);
        let back = q.mul(&Float::from_int(&BigInt::from(3)));
        let resid = Float::from_int(&BigInt::one()).sub(&back).abs();
        assert!(resid.mag_up() <= e.mul_u64(3));
        assert!(e <= Mag::pow2(-99));
    }

    #[test]
    fn add_round_skips_negligible_terms() {
        let big = Float::from_int(&(BigInt::one() << 1000));
        let tiny = Float::new(BigInt::one(), -100_000);
        let (s, e) = big.add_round(&tiny, 64);
        assert_eq!(s, big);
        assert!(e >= tiny.mag_up());
    }

    #[test]
    fn nearest() {
        assert_eq!(Float::from_f64(2.5).nearest_integer(), BigInt::from(3));
        assert_eq!(Float::from_f64(-2.5).nearest_integer(), BigInt::from(-3));
        assert_eq!(Float::from_f64(-2.4).nearest_integer(), BigInt::from(-2));
        assert_eq!(Float::from_f64(7.0).nearest_integer(), BigInt::from(7));
    }

    #[test]
    fn ordering_and_mags() {
        let a = Float::from_f64(-3.25);
        let b = Float::from_f64(0.5);
        assert!(a < b);
        assert!(a.mag_down() <= Mag::from_u64(4) && a.mag_up() >= Mag::from_u64(3));
        let huge = Float::from_int(&((BigInt::one() << 300) + 1));
        assert!(huge.mag_up() > Mag::pow2(300));
        assert!(huge.mag_down() <= Mag::pow2(300).add(Mag::pow2(271)));
    }
}
