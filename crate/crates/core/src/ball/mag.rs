use core::cmp::Ordering;

/// Nonnegative real `man · 2^exp` with a 30-bit mantissa, used for radii
/// and error bounds. Every operation has an upward-rounding form; the
/// `_down` forms round toward zero and give lower bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mag {
    man: u64,
    exp: i64,
}

const BITS: u32 = 30;

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };

    fn norm(man: u128, exp: i64, up: bool) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        let bits = 128 - man.leading_zeros();
        if bits > BITS {
            let s = bits - BITS;
            let mut m = man >> s;
            if up && (m << s) != man {
                m += 1;
                if m >> BITS != 0 {
                    return Mag { man: (m >> 1) as u64, exp: exp + s as i64 + 1 };
                }
            }
            Mag { man: m as u64, exp: exp + s as i64 }
        } else {
            let s = BITS - bits;
            Mag { man: (man << s) as u64, exp: exp - s as i64 }
        }
    }

    pub fn from_u64(n: u64) -> Mag {
        Mag::norm(n as u128, 0, true)
    }

    /// Upper bound for `n · 2^exp` where `n` is given by its top bits.
    pub(crate) fn from_parts(man: u128, exp: i64, up: bool) -> Mag {
        Mag::norm(man, exp, up)
    }

    pub fn pow2(e: i64) -> Mag {
        Mag { man: 1 << (BITS - 1), exp: e - (BITS as i64 - 1) }
    }

    pub fn is_zero(self) -> bool {
        self.man == 0
    }

    pub fn mantissa(self) -> u64 {
        self.man
    }

    pub fn exponent(self) -> i64 {
        self.exp
    }

    /// Smallest `t` with `self < 2^t`; `i64::MIN` for zero.
    pub fn top(self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + BITS as i64
        }
    }

    fn add_impl(self, other: Mag, up: bool) -> Mag {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exp >= other.exp { (self, other) } else { (other, self) };
        let shift = (hi.exp - lo.exp) as u64;
        if shift > 60 {
            // lo is below half an ulp of hi
            let m = hi.man as u128 + up as u128;
            return Mag::norm(m, hi.exp, up);
        }
        let m = ((hi.man as u128) << shift) + lo.man as u128;
        Mag::norm(m, lo.exp, up)
    }

    pub fn add(self, other: Mag) -> Mag {
        self.add_impl(other, true)
    }

    pub fn add_down(self, other: Mag) -> Mag {
        self.add_impl(other, false)
    }

    pub fn mul(self, other: Mag) -> Mag {
        Mag::norm(self.man as u128 * other.man as u128, self.exp + other.exp, true)
    }

    pub fn mul_down(self, other: Mag) -> Mag {
        Mag::norm(self.man as u128 * other.man as u128, self.exp + other.exp, false)
    }

    pub fn mul_u64(self, n: u64) -> Mag {
        self.mul(Mag::from_u64(n))
    }

    fn div_impl(self, other: Mag, up: bool) -> Mag {
        assert!(!other.is_zero(), "division by a zero magnitude");
        let num = (self.man as u128) << 64;
        let q = num / other.man as u128;
        let q = if up && q * other.man as u128 != num { q + 1 } else { q };
        Mag::norm(q, self.exp - other.exp - 64, up)
    }

    /// Upper bound for `self / other`; `other` must be nonzero.
    pub fn div(self, other: Mag) -> Mag {
        self.div_impl(other, true)
    }

    pub fn div_down(self, other: Mag) -> Mag {
        self.div_impl(other, false)
    }

    /// `max(self - other, 0)` rounded down.
    pub fn sub_down(self, other: Mag) -> Mag {
        if other.is_zero() {
            return self;
        }
        if self <= other {
            return Mag::ZERO;
        }
        let shift = (self.exp - other.exp) as u64;
        if shift > 60 {
            return Mag::norm(self.man as u128 - 1, self.exp, false);
        }
        let m = ((self.man as u128) << shift) - other.man as u128;
        Mag::norm(m, other.exp, false)
    }

    fn sqrt_impl(self, up: bool) -> Mag {
        if self.is_zero() {
            return self;
        }
        // man·2^exp = (man·2^s)·2^(exp-s) with exp-s even and man·2^s ~ 2^60.
        let mut s = 60 - BITS as i64;
        if (self.exp - s) % 2 != 0 {
            s += 1;
        }
        let n = (self.man as u128) << s;
        let mut r = isqrt(n);
        if up && r * r != n {
            r += 1;
        }
        Mag::norm(r, (self.exp - s) / 2, up)
    }

    pub fn sqrt(self) -> Mag {
        self.sqrt_impl(true)
    }

    pub fn sqrt_down(self) -> Mag {
        self.sqrt_impl(false)
    }

    pub fn max(self, other: Mag) -> Mag {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Approximate value; saturates to 0 or infinity outside the f64 range.
    pub fn to_f64(self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = self.exp.clamp(-2000, 2000) as i32;
        self.man as f64 * libm::exp2(e as f64)
    }
}

fn isqrt(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = libm::sqrt(n as f64) as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.exp.cmp(&other.exp).then(self.man.cmp(&other.man)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_directions() {
        let third_up = Mag::from_u64(1).div(Mag::from_u64(3));
        let third_down = Mag::from_u64(1).div_down(Mag::from_u64(3));
        assert!(third_down < third_up);
        assert!(third_up.mul_u64(3) >= Mag::from_u64(1));
        assert!(third_down.mul_down(Mag::from_u64(3)) < Mag::from_u64(1));
        let big = Mag::from_u64(u64::MAX);
        assert!(big.to_f64() >= u64::MAX as f64);
    }

    #[test]
    fn sqrt_brackets() {
        for n in [2u64, 3, 10, 1 << 40, 12345678901] {
            let m = Mag::from_u64(n);
            let (lo, hi) = (m.sqrt_down(), m.sqrt());
            assert!(lo.mul_down(lo) <= m && m <= hi.mul(hi), "{n}");
            assert!(hi.to_f64() - lo.to_f64() <= 1e-8 * hi.to_f64());
        }
        assert_eq!(Mag::from_u64(16).sqrt(), Mag::from_u64(4));
        let small = Mag::pow2(-101);
        assert!(small.sqrt().mul(small.sqrt()) >= small);
    }

    #[test]
    fn add_sub_and_order() {
        let a = Mag::pow2(10);
        let b = Mag::pow2(-100);
        assert!(a.add(b) > a);
        assert_eq!(a.add_down(b), a);
        assert!(a.sub_down(b) < a);
        assert_eq!(b.sub_down(a), Mag::ZERO);
        assert_eq!(Mag::from_u64(5).sub_down(Mag::from_u64(3)), Mag::from_u64(2));
        assert!(Mag::ZERO < b && b < a);
        assert_eq!(Mag::pow2(3).top(), 4);
    }
}
