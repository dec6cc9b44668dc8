use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{det_bareiss, Ring};
use crate::{Error, Result};

/// Dense univariate polynomial, coefficients stored from degree 0 upward.
///
/// The leading coefficient is never zero; the zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

pub type ZPoly = Poly<BigInt>;

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == c.one_like())
    }

    /// Degree of a monic polynomial, or the reason it is unusable.
    pub fn monic_degree(&self) -> Result<usize> {
        match self.degree() {
            None | Some(0) => Err(Error::DegreeTooSmall(0, 1)),
            Some(_) if !self.is_monic() => Err(Error::NotMonic),
            Some(k) => Ok(k),
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.small_like(i as i64) * c.clone()).collect();
        Poly::new(coeffs)
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly { coeffs: Vec::new() };
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() { (self, other) } else { (other, self) };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o = o.clone() + c.clone();
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Elementary symmetric functions `e_1..e_k` of the roots of a monic
    /// polynomial: `e_i = (-1)^i c_{k-i}`.
    pub fn elementary_symmetric(&self) -> Result<Vec<R>> {
        let k = self.monic_degree()?;
        Ok((1..=k)
            .map(|i| {
                let c = self.coeffs[k - i].clone();
                if i % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect())
    }
}

impl ZPoly {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }
}

/// Power sums `T_0..T_{count-1}` of the roots of a monic polynomial.
///
/// The first `k` terms come from Newton's identities, the rest from the
/// recurrence `T_{n+k} = a_{k-1} T_{n+k-1} + … + a_0 T_n` with `a_i = -c_i`.
pub fn newton_bootstrap<R: Ring>(f: &Poly<R>, count: usize) -> Result<Vec<R>> {
    let k = f.monic_degree()?;
    if count == 0 {
        return Err(Error::Invalid("term count must be at least 1".into()));
    }
    let c = f.coeffs();
    let mut t: Vec<R> = Vec::with_capacity(count);
    t.push(c[0].small_like(k as i64));
    for n in 1..count {
        let mut s = if n <= k { -(c[k - n].small_like(n as i64) * c[k - n].clone()) } else { c[0].zero_like() };
        for i in 1..=n.min(k) {
            if i == n {
                break;
            }
            s = s - c[k - i].clone() * t[n - i].clone();
        }
        t.push(s);
    }
    Ok(t)
}

/// Resultant via the determinant of the Sylvester matrix.
pub fn resultant<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> Result<R> {
    let (m, n) = match (a.degree(), b.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return Err(Error::Invalid("resultant of the zero polynomial".into())),
    };
    let pow = |x: &R, e: usize| (0..e).fold(x.one_like(), |acc, _| acc * x.clone());
    if m == 0 {
        return Ok(pow(&a.coeffs[0], n));
    }
    if n == 0 {
        return Ok(pow(&b.coeffs[0], m));
    }
    let size = m + n;
    let zero = a.coeffs[0].zero_like();
    let mut rows = vec![vec![zero; size]; size];
    for i in 0..n {
        for (j, c) in a.coeffs.iter().rev().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.coeffs.iter().rev().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    Ok(det_bareiss(rows))
}

/// Discriminant `(-1)^{k(k-1)/2} Res(f, f')` of a monic polynomial.
pub fn discriminant<R: Ring>(f: &Poly<R>) -> Result<R> {
    let k = f.monic_degree()?;
    let res = resultant(f, &f.derivative())?;
    if res.is_zero() {
        return Err(Error::NotSquarefree);
    }
    Ok(if (k * (k - 1) / 2) % 2 == 1 { -res } else { res })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn bootstrap_matches_known_sums() {
        let f = ZPoly::from_i64s(&[-1, -1, 0, 0, 0, 1]);
        assert_eq!(newton_bootstrap(&f, 5).unwrap(), ints(&[5, 0, 0, 0, 4]));
        let g = ZPoly::from_i64s(&[1, 0, 1]);
        assert_eq!(newton_bootstrap(&g, 4).unwrap(), ints(&[2, 0, -2, 0]));
        let h = ZPoly::from_i64s(&[-1, -1, 0, 0, 1]);
        assert_eq!(newton_bootstrap(&h, 5).unwrap(), ints(&[4, 0, 0, 3, 4]));
    }

    #[test]
    fn bootstrap_rejects_non_monic() {
        let f = ZPoly::from_i64s(&[1, 0, 2]);
        assert_eq!(newton_bootstrap(&f, 3), Err(Error::NotMonic));
    }

    #[test]
    fn discriminants() {
        let cases: [(&[i64], i64); 4] = [
            (&[-1, -1, 0, 0, 0, 1], 2869),
            (&[-1, -1, 0, 0, 0, 0, 0, 1], -776887),
            (&[1, 0, 1], -4),
            (&[-1, -1, 0, 0, 1], -283),
        ];
        for (c, d) in cases {
            assert_eq!(discriminant(&ZPoly::from_i64s(c)).unwrap(), BigInt::from(d));
        }
        let square = ZPoly::from_i64s(&[1, 2, 1]);
        assert_eq!(discriminant(&square), Err(Error::NotSquarefree));
    }

    #[test]
    fn resultant_of_linear_factors() {
        // b(2) * b(3) for a = (x-2)(x-3)
        let a = ZPoly::from_i64s(&[6, -5, 1]);
        let b = ZPoly::from_i64s(&[-5, 1]);
        assert_eq!(resultant(&a, &b).unwrap(), BigInt::from(6));
    }
}
