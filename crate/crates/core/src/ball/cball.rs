use num_bigint::BigInt;

use super::{Float, Mag};

/// Complex number with [`Float`] parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFloat {
    pub re: Float,
    pub im: Float,
}

impl CFloat {
    pub fn zero() -> CFloat {
        CFloat { re: Float::zero(), im: Float::zero() }
    }

    pub fn from_int(n: &BigInt) -> CFloat {
        CFloat { re: Float::from_int(n), im: Float::zero() }
    }

    pub fn from_f64(re: f64, im: f64) -> CFloat {
        CFloat { re: Float::from_f64(re), im: Float::from_f64(im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn neg(&self) -> CFloat {
        CFloat { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> CFloat {
        CFloat { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn round(&self, prec: u64) -> (CFloat, Mag) {
        let (re, e1) = self.re.round(prec);
        let (im, e2) = self.im.round(prec);
        (CFloat { re, im }, e1.add(e2))
    }

    pub fn add(&self, o: &CFloat, prec: u64) -> (CFloat, Mag) {
        let (re, e1) = self.re.add_round(&o.re, prec);
        let (im, e2) = self.im.add_round(&o.im, prec);
        (CFloat { re, im }, e1.add(e2))
    }

    pub fn sub(&self, o: &CFloat, prec: u64) -> (CFloat, Mag) {
        self.add(&o.neg(), prec)
    }

    pub fn sub_exact(&self, o: &CFloat) -> CFloat {
        CFloat { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    /// Exact product.
    pub fn mul_exact(&self, o: &CFloat) -> CFloat {
        CFloat { re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)), im: self.re.mul(&o.im).add(&self.im.mul(&o.re)) }
    }

    pub fn mul(&self, o: &CFloat, prec: u64) -> (CFloat, Mag) {
        self.mul_exact(o).round(prec)
    }

    fn norm_sq(&self) -> Float {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    /// `1/self`; `self` must be nonzero.
    pub fn inv(&self, prec: u64) -> (CFloat, Mag) {
        let d = self.norm_sq();
        let (re, e1) = self.re.div(&d, prec);
        let (im, e2) = self.im.neg().div(&d, prec);
        (CFloat { re, im }, e1.add(e2))
    }

    pub fn div(&self, o: &CFloat, prec: u64) -> (CFloat, Mag) {
        // (a conj b) / |b|²
        let d = o.norm_sq();
        let n = self.mul_exact(&o.conj());
        let (re, e1) = n.re.div(&d, prec);
        let (im, e2) = n.im.div(&d, prec);
        (CFloat { re, im }, e1.add(e2))
    }

    pub fn abs_up(&self) -> Mag {
        let (a, b) = (self.re.mag_up(), self.im.mag_up());
        a.mul(a).add(b.mul(b)).sqrt()
    }

    pub fn abs_down(&self) -> Mag {
        let (a, b) = (self.re.mag_down(), self.im.mag_down());
        a.mul_down(a).add_down(b.mul_down(b)).sqrt_down()
    }

    /// Smallest `t` with `|re|, |im| < 2^t`.
    pub fn top(&self) -> i64 {
        self.re.top().max(self.im.top())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// Complex disc `{z : |z - mid| ≤ rad}`. Arithmetic is outward-rounded, so
/// the result of every operation contains every value the operation can take
/// on points of its inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CBall {
    pub mid: CFloat,
    pub rad: Mag,
}

impl CBall {
    pub fn new(mid: CFloat, rad: Mag) -> CBall {
        CBall { mid, rad }
    }

    pub fn exact(mid: CFloat) -> CBall {
        CBall { mid, rad: Mag::ZERO }
    }

    pub fn zero() -> CBall {
        CBall::exact(CFloat::zero())
    }

    pub fn from_int(n: &BigInt) -> CBall {
        CBall::exact(CFloat::from_int(n))
    }

    pub fn from_int_prec(n: &BigInt, prec: u64) -> CBall {
        let (mid, err) = CFloat::from_int(n).round(prec);
        CBall { mid, rad: err }
    }

    pub fn neg(&self) -> CBall {
        CBall { mid: self.mid.neg(), rad: self.rad }
    }

    pub fn conj(&self) -> CBall {
        CBall { mid: self.mid.conj(), rad: self.rad }
    }

    pub fn add(&self, o: &CBall, prec: u64) -> CBall {
        let (mid, err) = self.mid.add(&o.mid, prec);
        CBall { mid, rad: self.rad.add(o.rad).add(err) }
    }

    pub fn sub(&self, o: &CBall, prec: u64) -> CBall {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &CBall, prec: u64) -> CBall {
        let (mid, err) = self.mid.mul(&o.mid, prec);
        // |xy - ab| ≤ |a|s + |b|r + rs
        let rad = self.mid.abs_up().mul(o.rad).add(o.mid.abs_up().mul(self.rad)).add(self.rad.mul(o.rad)).add(err);
        CBall { mid, rad }
    }

    pub fn sqr(&self, prec: u64) -> CBall {
        self.mul(self, prec)
    }

    pub fn pow(&self, mut e: u32, prec: u64) -> CBall {
        let mut base = self.clone();
        let mut acc = CBall::from_int(&BigInt::from(1));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr(prec);
            }
        }
        acc
    }

    /// `1/self`, or `None` if the ball may contain zero.
    pub fn inv(&self, prec: u64) -> Option<CBall> {
        let low = self.mid.abs_down();
        if low <= self.rad || self.mid.is_zero() {
            return None;
        }
        let (mid, err) = self.mid.inv(prec);
        // |1/z - 1/m| = |z - m| / (|z||m|) ≤ r / ((L - r) L)
        let denom = low.sub_down(self.rad).mul_down(low);
        if denom.is_zero() {
            return None;
        }
        let rad = if self.rad.is_zero() { Mag::ZERO } else { self.rad.div(denom) };
        Some(CBall { mid, rad: rad.add(err) })
    }

    pub fn div(&self, o: &CBall, prec: u64) -> Option<CBall> {
        if o.rad.is_zero() && !o.mid.is_zero() {
            let (mid, err) = self.mid.div(&o.mid, prec);
            let rad = self.rad.div(o.mid.abs_down()).add(err);
            return Some(CBall { mid, rad });
        }
        Some(self.mul(&o.inv(prec)?, prec))
    }

    pub fn abs_up(&self) -> Mag {
        self.mid.abs_up().add(self.rad)
    }

    pub fn abs_down(&self) -> Mag {
        self.mid.abs_down().sub_down(self.rad)
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs_down() <= self.rad
    }

    /// Whether the two discs may intersect.
    pub fn overlaps(&self, o: &CBall) -> bool {
        self.mid.sub_exact(&o.mid).abs_down() <= self.rad.add(o.rad)
    }

    /// Whether `o` lies inside `self`.
    pub fn contains(&self, o: &CBall) -> bool {
        self.mid.sub_exact(&o.mid).abs_up().add(o.rad) <= self.rad
    }

    /// Whether the point `z` lies inside `self`.
    pub fn contains_point(&self, z: &CFloat) -> bool {
        self.contains(&CBall::exact(z.clone()))
    }

    /// Whether the exact integer `n` lies inside the disc.
    pub fn contains_int(&self, n: &BigInt) -> bool {
        self.contains_point(&CFloat::from_int(n))
    }
}
