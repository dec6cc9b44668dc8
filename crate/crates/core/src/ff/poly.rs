use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};

use super::{Fq, FqField};

/// Polynomial over an [`FqField`], coefficients from degree 0, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqPoly {
    coeffs: Vec<Fq>,
}

impl FqPoly {
    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Fq> {
        self.coeffs.last()
    }
}

impl FqField {
    pub fn poly(&self, mut coeffs: Vec<Fq>) -> FqPoly {
        while coeffs.last().is_some_and(|c| self.is_zero(c)) {
            coeffs.pop();
        }
        FqPoly { coeffs }
    }

    pub fn poly_from_ints(&self, coeffs: &[BigInt]) -> FqPoly {
        self.poly(coeffs.iter().map(|c| self.from_int(c)).collect())
    }

    /// The monomial `c·X^n`.
    pub fn monomial(&self, c: Fq, n: usize) -> FqPoly {
        let mut v = vec![self.zero(); n];
        v.push(c);
        self.poly(v)
    }

    pub fn x(&self) -> FqPoly {
        self.monomial(self.one(), 1)
    }

    pub fn poly_one(&self) -> FqPoly {
        self.monomial(self.one(), 0)
    }

    pub fn poly_add(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.zero();
        self.poly(
            (0..n).map(|i| self.add(a.coeffs.get(i).unwrap_or(&zero), b.coeffs.get(i).unwrap_or(&zero))).collect(),
        )
    }

    pub fn poly_sub(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.zero();
        self.poly(
            (0..n).map(|i| self.sub(a.coeffs.get(i).unwrap_or(&zero), b.coeffs.get(i).unwrap_or(&zero))).collect(),
        )
    }

    pub fn poly_scale(&self, a: &FqPoly, c: &Fq) -> FqPoly {
        self.poly(a.coeffs.iter().map(|x| self.mul(x, c)).collect())
    }

    pub fn poly_mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        if a.is_zero() || b.is_zero() {
            return FqPoly { coeffs: Vec::new() };
        }
        let mut out = vec![self.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        self.poly(out)
    }

    /// Quotient and remainder; panics if `b` is zero.
    pub fn poly_divrem(&self, a: &FqPoly, b: &FqPoly) -> (FqPoly, FqPoly) {
        let db = b.degree().expect("division by the zero polynomial");
        if a.coeffs.len() <= db {
            return (FqPoly { coeffs: Vec::new() }, a.clone());
        }
        let inv = self.inv(b.leading().unwrap()).unwrap();
        let monic = self.is_one(&inv);
        let mut r = a.coeffs.clone();
        let mut q = vec![self.zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let top = &r[k + db];
            if self.is_zero(top) {
                continue;
            }
            let c = if monic { top.clone() } else { self.mul(top, &inv) };
            for (i, bi) in b.coeffs.iter().enumerate().take(db) {
                r[k + i] = self.sub(&r[k + i], &self.mul(&c, bi));
            }
            r[k + db] = self.zero();
            q[k] = c;
        }
        r.truncate(db);
        (self.poly(q), self.poly(r))
    }

    pub fn poly_rem(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.poly_divrem(a, b).1
    }

    pub fn make_monic(&self, a: &FqPoly) -> FqPoly {
        match a.leading() {
            None => a.clone(),
            Some(l) => self.poly_scale(a, &self.inv(l).unwrap()),
        }
    }

    pub fn derivative(&self, a: &FqPoly) -> FqPoly {
        self.poly(a.coeffs.iter().enumerate().skip(1).map(|(i, c)| self.mul(c, &self.from_u64(i as u64))).collect())
    }

    pub fn poly_eval(&self, a: &FqPoly, x: &Fq) -> Fq {
        a.coeffs.iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd_mod(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.make_monic(&a)
    }

    /// `base^e mod f`.
    pub fn pow_mod(&self, base: &FqPoly, e: &BigUint, f: &FqPoly) -> FqPoly {
        let base = self.poly_rem(base, f);
        let mut acc = self.poly_rem(&self.poly_one(), f);
        for i in (0..e.bits()).rev() {
            acc = self.poly_rem(&self.poly_mul(&acc, &acc), f);
            if e.bit(i) {
                acc = self.poly_rem(&self.poly_mul(&acc, &base), f);
            }
        }
        acc
    }

    /// `X^e mod f`, by square-and-multiply where multiplying by `X` is a shift.
    pub fn pow_x_mod(&self, f: &FqPoly, e: &BigUint) -> FqPoly {
        let mut acc = self.poly_rem(&self.poly_one(), f);
        for i in (0..e.bits()).rev() {
            acc = self.poly_rem(&self.poly_mul(&acc, &acc), f);
            if e.bit(i) {
                let mut shifted = vec![self.zero()];
                shifted.extend(acc.coeffs);
                acc = self.poly_rem(&self.poly(shifted), f);
            }
        }
        acc
    }

    /// Number of distinct roots of `f` in this field: `deg gcd(X^q - X, f)`.
    pub fn count_roots(&self, f: &FqPoly) -> usize {
        let f = self.make_monic(f);
        if f.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let xq = self.pow_x_mod(&f, self.order());
        let g = self.gcd_mod(&self.poly_sub(&xq, &self.x()), &f);
        g.degree().unwrap_or(0)
    }
}
