//! The power sums `T_n = α_1^n + … + α_k^n` of the roots of a monic `f`.
//!
//! `T_n` satisfies `T_{n+k} = a_{k-1} T_{n+k-1} + … + a_0 T_n` with
//! `a_i = -c_i`, the `c_i` being the coefficients of `f`. Modulo a residue
//! prime the sequence is evaluated either by powering the companion matrix or
//! by reducing `X^n` modulo `f̄`: since `T_i = Tr(X^i)` in `𝔽_q[X]/(f̄)`,
//! writing `X^n ≡ Σ r_i X^i` gives `T_n = Σ r_i T_i`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};

use crate::arith::{newton_bootstrap, Poly, Ring};
use crate::ff::{Fq, FqField, FqPoly};
use crate::nf::{NFElem, ResiduePrime};
use crate::Result;

/// Rings whose elements have an image in the residue field of a prime.
pub trait Reducible: Ring {
    fn reduce_at(&self, p: &ResiduePrime) -> Fq;
}

impl Reducible for BigInt {
    fn reduce_at(&self, p: &ResiduePrime) -> Fq {
        p.residue_field().from_int(self)
    }
}

impl Reducible for NFElem {
    fn reduce_at(&self, p: &ResiduePrime) -> Fq {
        p.reduce_unchecked(self)
    }
}

/// Recurrence coefficients and initial terms of `T_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct NewtonSeq<R> {
    f: Poly<R>,
    /// `a_0..a_{k-1}`.
    a: Vec<R>,
    /// `T_0..T_{k-1}`.
    init: Vec<R>,
}

impl<R: Ring> NewtonSeq<R> {
    pub fn new(f: &Poly<R>) -> Result<Self> {
        let k = f.monic_degree()?;
        let a = f.coeffs()[..k].iter().map(|c| -c.clone()).collect();
        let init = newton_bootstrap(f, k)?;
        Ok(NewtonSeq { f: f.clone(), a, init })
    }

    pub fn degree(&self) -> usize {
        self.a.len()
    }

    pub fn polynomial(&self) -> &Poly<R> {
        &self.f
    }

    /// `a_i = -c_i`.
    pub fn recurrence(&self) -> &[R] {
        &self.a
    }

    pub fn initial_terms(&self) -> &[R] {
        &self.init
    }

    /// `T_0..T_{count-1}`, exactly.
    pub fn terms(&self, count: usize) -> Vec<R> {
        let k = self.degree();
        let mut t: Vec<R> = self.init.iter().take(count).cloned().collect();
        while t.len() < count {
            let n = t.len() - k;
            let next = (0..k).fold(self.a[0].zero_like(), |acc, i| acc + self.a[i].clone() * t[n + i].clone());
            t.push(next);
        }
        t
    }

    /// `T_n` by iterating the recurrence.
    pub fn term_exact(&self, n: usize) -> R {
        let k = self.degree();
        if n < k {
            return self.init[n].clone();
        }
        let mut window: Vec<R> = self.init.clone();
        for _ in k..=n {
            let next = (0..k).fold(self.a[0].zero_like(), |acc, i| acc + self.a[i].clone() * window[i].clone());
            window.remove(0);
            window.push(next);
        }
        window.pop().unwrap()
    }
}

impl<R: Reducible> NewtonSeq<R> {
    /// The sequence with coefficients mapped into the residue field of `p`.
    pub fn reduce(&self, p: &ResiduePrime) -> ReducedSeq {
        let field = p.residue_field().clone();
        let a = self.a.iter().map(|x| x.reduce_at(p)).collect();
        let init = self.init.iter().map(|x| x.reduce_at(p)).collect();
        let f = field.poly(self.f.coeffs().iter().map(|x| x.reduce_at(p)).collect());
        ReducedSeq { field, a, init, f }
    }

    /// `T_n mod p` by companion-matrix powering.
    pub fn term_mod_matrix(&self, n: &BigUint, p: &ResiduePrime) -> Fq {
        self.reduce(p).term_matrix(n)
    }

    /// `T_n mod p` from `X^n mod f̄`.
    pub fn term_mod_trace(&self, n: &BigUint, p: &ResiduePrime) -> Fq {
        self.reduce(p).term_trace(n)
    }
}

/// A [`NewtonSeq`] over a finite field.
#[derive(Clone, Debug)]
pub struct ReducedSeq {
    field: FqField,
    a: Vec<Fq>,
    init: Vec<Fq>,
    f: FqPoly,
}

impl ReducedSeq {
    pub fn field(&self) -> &FqField {
        &self.field
    }

    /// `f` reduced; still monic of degree `k`.
    pub fn polynomial(&self) -> &FqPoly {
        &self.f
    }

    pub fn initial_terms(&self) -> &[Fq] {
        &self.init
    }

    /// Shifts the window `(T_n..T_{n+k-1})` by powers of the companion
    /// matrix `C`, where `C` maps the window at `n` to the window at `n+1`.
    pub fn term_matrix(&self, n: &BigUint) -> Fq {
        let k = self.a.len();
        let fl = &self.field;
        let mut c = vec![vec![fl.zero(); k]; k];
        for i in 0..k - 1 {
            c[i][i + 1] = fl.one();
        }
        c[k - 1] = self.a.clone();
        let mut acc: Option<Vec<Vec<Fq>>> = None;
        for i in (0..n.bits()).rev() {
            if let Some(m) = acc.take() {
                acc = Some(self.mat_mul(&m, &m));
            }
            if n.bit(i) {
                acc = Some(match acc.take() {
                    Some(m) => self.mat_mul(&m, &c),
                    None => c.clone(),
                });
            }
        }
        let Some(m) = acc else {
            return self.init[0].clone();
        };
        m[0].iter().zip(&self.init).fold(fl.zero(), |s, (x, t)| fl.add(&s, &fl.mul(x, t)))
    }

    fn mat_mul(&self, x: &[Vec<Fq>], y: &[Vec<Fq>]) -> Vec<Vec<Fq>> {
        let fl = &self.field;
        let k = x.len();
        (0..k)
            .map(|i| (0..k).map(|j| (0..k).fold(fl.zero(), |s, l| fl.add(&s, &fl.mul(&x[i][l], &y[l][j])))).collect())
            .collect()
    }

    /// `T_n = Σ r_i T_i` where `X^n ≡ Σ r_i X^i (mod f̄)`.
    pub fn term_trace(&self, n: &BigUint) -> Fq {
        let fl = &self.field;
        let r = fl.pow_x_mod(&self.f, n);
        r.coeffs().iter().zip(&self.init).fold(fl.zero(), |s, (x, t)| fl.add(&s, &fl.mul(x, t)))
    }

    /// `T_n` for small `n`, by the recurrence.
    pub fn term_iter(&self, n: u64) -> Fq {
        let k = self.a.len();
        if (n as usize) < k {
            return self.init[n as usize].clone();
        }
        let fl = &self.field;
        let mut w = self.init.clone();
        for _ in k as u64..=n {
            let next = (0..k).fold(fl.zero(), |s, i| fl.add(&s, &fl.mul(&self.a[i], &w[i])));
            w.remove(0);
            w.push(next);
        }
        w.pop().unwrap()
    }

    pub fn is_zero(&self, x: &Fq) -> bool {
        self.field.is_zero(x)
    }
}

/// Convenience for the common `n < 2^64` case.
pub fn index(n: u64) -> BigUint {
    BigUint::from(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ZPoly;
    use crate::nf::NumberField;

    fn seq(c: &[i64]) -> NewtonSeq<BigInt> {
        NewtonSeq::new(&ZPoly::from_i64s(c)).unwrap()
    }

    fn prime(p: u64) -> ResiduePrime {
        NumberField::rationals().residue_primes_above(&BigUint::from(p)).unwrap().remove(0)
    }

    fn val(p: &ResiduePrime, x: &Fq) -> BigUint {
        p.residue_field().as_prime_field(x).unwrap()
    }

    #[test]
    fn exact_terms() {
        let s = seq(&[-1, -1, 0, 0, 0, 1]);
        assert_eq!(s.term_exact(0), BigInt::from(5));
        assert_eq!(s.term_exact(8), BigInt::from(4));
        assert_eq!(s.term_exact(20), BigInt::from(9));
        let t = s.terms(21);
        assert_eq!(t[..5], [5, 0, 0, 0, 4].map(BigInt::from));
        assert_eq!(t[20], BigInt::from(9));
        assert_eq!(seq(&[1, 0, 1]).terms(4), [2, 0, -2, 0].map(BigInt::from));
        assert_eq!(seq(&[-1, -1, 0, 0, 1]).terms(5), [4, 0, 0, 3, 4].map(BigInt::from));
    }

    #[test]
    fn spot_congruences() {
        let s = seq(&[-1, -1, 0, 0, 0, 1]);
        for (p, want) in [(151u64, 74u64), (467, 250), (761, 355), (2477, 695)] {
            let pr = prime(p);
            let n = index(p + 1);
            assert_eq!(val(&pr, &s.term_mod_matrix(&n, &pr)), BigUint::from(want), "matrix p={p}");
            assert_eq!(val(&pr, &s.term_mod_trace(&n, &pr)), BigUint::from(want), "trace p={p}");
        }
        let s7 = seq(&[-1, -1, 0, 0, 0, 0, 0, 1]);
        let pr = prime(776887);
        assert_eq!(val(&pr, &s7.term_mod_trace(&index(776888), &pr)), BigUint::from(115287u64));
        assert_eq!(val(&pr, &s7.term_mod_matrix(&index(776888), &pr)), BigUint::from(115287u64));
    }

    #[test]
    fn methods_agree_with_exact() {
        let s = seq(&[3, -2, 0, 5, 1]);
        let pr = prime(97);
        let red = s.reduce(&pr);
        for n in [0u64, 1, 3, 4, 5, 17, 60] {
            let exact = pr.residue_field().from_int(&s.term_exact(n as usize));
            assert_eq!(red.term_matrix(&index(n)), exact);
            assert_eq!(red.term_trace(&index(n)), exact);
            assert_eq!(red.term_iter(n), exact);
        }
    }

    #[test]
    fn over_a_number_field() {
        // f = X^2 - θ over ℚ(√-5): T_n = 2θ^{n/2} for even n
        let k = NumberField::new(ZPoly::from_i64s(&[5, 0, 1])).unwrap();
        let f = Poly::new(alloc::vec![-k.theta(), k.from_int(BigInt::from(0)), k.from_int(BigInt::from(1))]);
        let s = NewtonSeq::new(&f).unwrap();
        assert_eq!(s.term_exact(4), k.theta().pow(2) * k.from_int(BigInt::from(2)));
        for pr in k.residue_primes_above(&BigUint::from(29u32)).unwrap() {
            let n = index(30);
            let exact = pr.reduce(&s.term_exact(30)).unwrap();
            assert_eq!(s.term_mod_trace(&n, &pr), exact);
            assert_eq!(s.term_mod_matrix(&n, &pr), exact);
        }
    }
}
