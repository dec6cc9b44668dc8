use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand_core::RngCore;

use crate::arith::is_prime;
use crate::{Error, Result};

/// The finite field `𝔽_p[Y]/(h)` with `h` monic irreducible of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqField {
    p: BigUint,
    modulus: Vec<BigUint>,
    q: BigUint,
}

/// Element of an [`FqField`]: `d` coordinates over the basis `1, Y, …, Y^{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fq(Vec<BigUint>);

impl Fq {
    pub fn coords(&self) -> &[BigUint] {
        &self.0
    }
}

impl FqField {
    /// The prime field `𝔽_p`, with modulus `Y`.
    pub fn prime(p: &BigUint) -> Result<Self> {
        if !is_prime(&BigInt::from(p.clone())) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(Self::new_unchecked(p.clone(), vec![BigUint::zero(), BigUint::one()]))
    }

    /// `𝔽_p[Y]/(h)`; `h` (coefficients from degree 0) must be monic and
    /// irreducible mod `p`, which is verified by factoring it.
    pub fn new(p: &BigUint, modulus: &[BigInt]) -> Result<Self> {
        let base = Self::prime(p)?;
        let h = base.poly_from_ints(modulus);
        match h.degree() {
            Some(d) if d >= 1 => {}
            _ => return Err(Error::DegreeTooSmall(h.degree().unwrap_or(0), 1)),
        }
        if !base.is_one(h.leading().unwrap()) {
            return Err(Error::NotMonic);
        }
        let factors = base.factor_poly_mod(&h);
        if factors.len() != 1 || factors[0].1 != 1 {
            return Err(Error::ReducibleModulus);
        }
        let coeffs = h.coeffs().iter().map(|c| c.0[0].clone()).collect();
        Ok(Self::new_unchecked(p.clone(), coeffs))
    }

    pub(crate) fn new_unchecked(p: BigUint, modulus: Vec<BigUint>) -> Self {
        let d = modulus.len() - 1;
        let q = p.pow(d as u32);
        FqField { p, modulus, q }
    }

    pub fn characteristic(&self) -> &BigUint {
        &self.p
    }

    /// Field size `p^d`.
    pub fn order(&self) -> &BigUint {
        &self.q
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigUint] {
        &self.modulus
    }

    pub fn zero(&self) -> Fq {
        Fq(vec![BigUint::zero(); self.degree()])
    }

    pub fn one(&self) -> Fq {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> Fq {
        let mut v = self.zero();
        v.0[0] = BigUint::from(n) % &self.p;
        v
    }

    pub fn from_int(&self, n: &BigInt) -> Fq {
        let mut v = self.zero();
        v.0[0] = self.reduce_int(n);
        v
    }

    fn reduce_int(&self, n: &BigInt) -> BigUint {
        let r = n.mod_floor(&BigInt::from(self.p.clone()));
        r.to_biguint().expect("mod_floor is nonnegative")
    }

    /// Image of the polynomial `Σ c_i Y^i` (any length, integer coefficients).
    pub fn from_coords(&self, coeffs: &[BigInt]) -> Fq {
        let reduced: Vec<BigUint> = coeffs.iter().map(|c| self.reduce_int(c)).collect();
        self.reduce_poly(reduced)
    }

    pub fn is_zero(&self, a: &Fq) -> bool {
        a.0.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self, a: &Fq) -> bool {
        a.0[0].is_one() && a.0[1..].iter().all(Zero::is_zero)
    }

    /// Integer value of an element of the prime subfield.
    pub fn as_prime_field(&self, a: &Fq) -> Option<BigUint> {
        a.0[1..].iter().all(Zero::is_zero).then(|| a.0[0].clone())
    }

    pub fn add(&self, a: &Fq, b: &Fq) -> Fq {
        Fq(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % &self.p).collect())
    }

    pub fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        Fq(a.0.iter().zip(&b.0).map(|(x, y)| self.sub_p(x, y)).collect())
    }

    pub fn neg(&self, a: &Fq) -> Fq {
        Fq(a.0.iter().map(|x| self.sub_p(&BigUint::zero(), x)).collect())
    }

    fn sub_p(&self, x: &BigUint, y: &BigUint) -> BigUint {
        if x >= y {
            x - y
        } else {
            &self.p - y + x
        }
    }

    pub fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        if self.degree() == 1 {
            return Fq(vec![(&a.0[0] * &b.0[0]) % &self.p]);
        }
        let d = self.degree();
        let mut prod = vec![BigUint::zero(); 2 * d - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for c in prod.iter_mut() {
            *c %= &self.p;
        }
        self.reduce_poly(prod)
    }

    /// Reduces `Σ c_i Y^i` (coefficients already in `[0, p)`) modulo `h`.
    fn reduce_poly(&self, mut c: Vec<BigUint>) -> Fq {
        let d = self.degree();
        let h = &self.modulus;
        while c.len() > d {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = c.len() - d;
            for (i, hi) in h[..d].iter().enumerate() {
                c[shift + i] = self.sub_p(&c[shift + i], &((&top * hi) % &self.p));
            }
        }
        c.resize(d, BigUint::zero());
        Fq(c)
    }

    pub fn inv(&self, a: &Fq) -> Option<Fq> {
        if self.is_zero(a) {
            return None;
        }
        if self.degree() == 1 {
            return a.0[0].modinv(&self.p).map(|x| Fq(vec![x]));
        }
        // Extended Euclid in 𝔽_p[Y]: s·a ≡ gcd (mod h).
        let p = &self.p;
        let mut r0 = trim(self.modulus.clone());
        let mut r1 = trim(a.0.clone());
        let mut s0: Vec<BigUint> = Vec::new();
        let mut s1 = vec![BigUint::one()];
        while !r1.is_empty() {
            let (quot, rem) = fp_divrem(&r0, &r1, p);
            let s2 = fp_sub(&s0, &fp_mul(&quot, &s1, p), p);
            r0 = core::mem::replace(&mut r1, rem);
            s0 = core::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant because h is irreducible.
        let c = r0[0].modinv(p)?;
        let s: Vec<BigUint> = s0.iter().map(|x| (x * &c) % p).collect();
        Some(self.reduce_poly(s))
    }

    pub fn pow(&self, a: &Fq, e: &BigUint) -> Fq {
        if self.degree() == 1 {
            return Fq(vec![a.0[0].modpow(e, &self.p)]);
        }
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// The unique `b` with `b^p = a`.
    pub fn pth_root(&self, a: &Fq) -> Fq {
        self.pow(a, &(&self.q / &self.p))
    }

    pub fn random(&self, rng: &mut impl RngCore) -> Fq {
        let bytes = (self.p.bits() as usize).div_ceil(8) + 8;
        let mut buf = vec![0u8; bytes];
        Fq((0..self.degree())
            .map(|_| {
                rng.fill_bytes(&mut buf);
                BigUint::from_bytes_le(&buf) % &self.p
            })
            .collect())
    }

    /// Signed representative in `(-p/2, p/2]` of a prime-field element.
    pub fn centered(&self, a: &Fq) -> Option<BigInt> {
        let v = self.as_prime_field(a)?;
        let half = &self.p >> 1;
        Some(if v > half {
            BigInt::from(v) - BigInt::from(self.p.clone())
        } else {
            BigInt::from_biguint(Sign::Plus, v)
        })
    }
}

fn trim(mut v: Vec<BigUint>) -> Vec<BigUint> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn fp_mul(a: &[BigUint], b: &[BigUint], p: &BigUint) -> Vec<BigUint> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out.into_iter().map(|c| c % p).collect())
}

fn fp_sub(a: &[BigUint], b: &[BigUint], p: &BigUint) -> Vec<BigUint> {
    let n = a.len().max(b.len());
    let zero = BigUint::zero();
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).unwrap_or(&zero);
                let y = b.get(i).unwrap_or(&zero);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn fp_divrem(a: &[BigUint], b: &[BigUint], p: &BigUint) -> (Vec<BigUint>, Vec<BigUint>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = b[db].modinv(p).expect("nonzero leading coefficient");
    let mut q = vec![BigUint::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = (&r[k + db] * &inv) % p;
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            let t = (&c * bi) % p;
            r[k + i] = (&r[k + i] + p - t) % p;
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha8Rng;
    use rand_core::SeedableRng;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn prime_field_ops() {
        let f = FqField::prime(&BigUint::from(7u32)).unwrap();
        let a = f.from_int(&BigInt::from(-3));
        assert_eq!(f.as_prime_field(&a), Some(BigUint::from(4u32)));
        let inv = f.inv(&a).unwrap();
        assert!(f.is_one(&f.mul(&a, &inv)));
        assert_eq!(f.centered(&a), Some(BigInt::from(-3)));
        assert!(FqField::prime(&BigUint::from(9u32)).is_err());
    }

    #[test]
    fn extension_field_inverse_and_frobenius() {
        // 𝔽_25 = 𝔽_5[Y]/(Y² + 2Y - 2)
        let f = FqField::new(&BigUint::from(5u32), &ints(&[-2, 2, 1])).unwrap();
        assert_eq!(f.order(), &BigUint::from(25u32));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = f.random(&mut rng);
            if f.is_zero(&a) {
                continue;
            }
            assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
            assert_eq!(f.pow(&a, f.order()), a);
            let r = f.pth_root(&a);
            assert_eq!(f.pow(&r, &BigUint::from(5u32)), a);
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        let p = BigUint::from(5u32);
        assert_eq!(FqField::new(&p, &ints(&[-1, -1, 0, 1])), Err(Error::ReducibleModulus));
        assert_eq!(FqField::new(&p, &ints(&[1, 0, 2])), Err(Error::NotMonic));
        // Y³ - Y - 1 is irreducible mod 13
        assert!(FqField::new(&BigUint::from(13u32), &ints(&[-1, -1, 0, 1])).is_ok());
    }
}
