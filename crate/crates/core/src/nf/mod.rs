//! Number fields `K = ℚ[Y]/(g)` with elements in the order `ℤ[θ]`.
//!
//! `K = ℚ` is the degree-one field `g = Y`, so every algorithm runs on the
//! same code path for rational and non-rational base fields.

mod prime;

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::arith::{det_bareiss, discriminant, newton_bootstrap, primes_up_to, solve_rational, Poly, Ring, ZPoly};
use crate::ball::{isolate_roots, CertifiedRoots};
use crate::ff::FqField;
use crate::{Error, Result};

pub use prime::ResiduePrime;

/// Polynomial with coefficients in `ℤ[θ]`.
pub type NFPoly = Poly<NFElem>;

/// How irreducibility of the defining polynomial was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    /// Irreducible modulo some prime below 1000 not dividing the discriminant.
    Certified { witness: u64 },
    /// No such prime found; accepted as asserted by the caller.
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    g: ZPoly,
    disc: BigInt,
    irreducibility: Irreducibility,
    power_sums: Vec<BigInt>,
}

impl NumberField {
    pub fn new(g: ZPoly) -> Result<Arc<Self>> {
        let m = g.monic_degree()?;
        let disc = discriminant(&g)?;
        let irreducibility =
            if m == 1 { Irreducibility::Certified { witness: 2 } } else { certify_irreducible(&g, &disc) };
        let power_sums = newton_bootstrap(&g, 2 * m - 1)?;
        Ok(Arc::new(NumberField { g, disc, irreducibility, power_sums }))
    }

    pub fn rationals() -> Arc<Self> {
        Self::new(ZPoly::from_i64s(&[0, 1])).expect("Y is a valid defining polynomial")
    }

    pub fn polynomial(&self) -> &ZPoly {
        &self.g
    }

    pub fn degree(&self) -> usize {
        self.g.degree().unwrap()
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    /// `Tr(θ^i)` for `i < 2m - 1`.
    pub fn power_sums(&self) -> &[BigInt] {
        &self.power_sums
    }

    pub fn elem(self: &Arc<Self>, coords: Vec<BigInt>) -> NFElem {
        NFElem::reduced(self.clone(), coords)
    }

    pub fn from_int(self: &Arc<Self>, n: BigInt) -> NFElem {
        self.elem(vec![n])
    }

    pub fn theta(self: &Arc<Self>) -> NFElem {
        self.elem(vec![BigInt::zero(), BigInt::one()])
    }

    /// An integer polynomial viewed over `K`.
    pub fn lift(self: &Arc<Self>, f: &ZPoly) -> NFPoly {
        Poly::new(f.coeffs().iter().map(|c| self.from_int(c.clone())).collect())
    }

    /// Certified, pairwise-disjoint balls around the roots of `g`.
    pub fn embeddings(&self, bits: u64) -> Result<CertifiedRoots> {
        if bits < 64 {
            return Err(Error::Invalid("embedding precision must be at least 64 bits".into()));
        }
        isolate_roots(&self.g, bits)
    }

    /// Matrix of multiplication by `x`, columns `x·θ^j`.
    fn mult_matrix(self: &Arc<Self>, x: &NFElem) -> Vec<Vec<BigInt>> {
        let m = self.degree();
        let mut cols = Vec::with_capacity(m);
        let mut cur = x.clone();
        for _ in 0..m {
            cols.push(cur.coords.clone());
            cur = cur * self.theta();
        }
        (0..m).map(|i| (0..m).map(|j| cols[j][i].clone()).collect()).collect()
    }
}

fn certify_irreducible(g: &ZPoly, disc: &BigInt) -> Irreducibility {
    for p in primes_up_to(1000) {
        if Zero::is_zero(&(disc % p)) {
            continue;
        }
        let f = FqField::prime(&BigUint::from(p)).unwrap();
        if f.is_irreducible(&f.poly_from_ints(g.coeffs())) {
            return Irreducibility::Certified { witness: p };
        }
    }
    Irreducibility::Unverified
}

/// Element of `ℤ[θ]`, coordinates over `1, θ, …, θ^{m-1}`.
#[derive(Clone)]
pub struct NFElem {
    field: Arc<NumberField>,
    coords: Vec<BigInt>,
}

impl NFElem {
    fn reduced(field: Arc<NumberField>, mut c: Vec<BigInt>) -> Self {
        let m = field.degree();
        let g = field.g.coeffs();
        while c.len() > m {
            let top = c.pop().unwrap();
            if Zero::is_zero(&top) {
                continue;
            }
            let shift = c.len() - m;
            for (i, gi) in g[..m].iter().enumerate() {
                c[shift + i] -= &top * gi;
            }
        }
        c.resize(m, BigInt::zero());
        NFElem { field, coords: c }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// The rational integer this element equals, if it lies in `ℤ`.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| &self.coords[0])
    }

    /// `N_{K/ℚ}(x)`, the determinant of multiplication by `x`.
    pub fn norm(&self) -> BigInt {
        if self.field.is_rational() {
            return self.coords[0].clone();
        }
        det_bareiss(self.field.mult_matrix(self))
    }

    pub fn trace(&self) -> BigInt {
        self.coords.iter().zip(&self.field.power_sums).map(|(c, s)| c * s).sum()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(self.one_like(), |acc, _| acc * self.clone())
    }

    fn same_field(&self, other: &Self) {
        debug_assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "mixing elements of different number fields"
        );
    }
}

impl PartialEq for NFElem {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.field, &other.field) || self.field.g == other.field.g) && self.coords == other.coords
    }
}

impl Eq for NFElem {}

impl fmt::Debug for NFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NFElem({self})")
    }
}

/// Polynomial in `y`, highest degree first, e.g. `-9*y^2 + 18*y - 41`.
impl fmt::Display for NFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(&self.coords, "y"))
    }
}

/// Renders `Σ c_i v^i` highest degree first; zero renders as `0`.
pub fn format_poly(coeffs: &[BigInt], var: &str) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if Zero::is_zero(c) {
            continue;
        }
        let neg = c.is_negative();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        match i {
            0 => write!(s, "{a}").unwrap(),
            _ => {
                if !a.is_one() {
                    write!(s, "{a}*").unwrap();
                }
                s.push_str(var);
                if i > 1 {
                    write!(s, "^{i}").unwrap();
                }
            }
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl Add for NFElem {
    type Output = NFElem;
    fn add(mut self, rhs: NFElem) -> NFElem {
        self.same_field(&rhs);
        for (a, b) in self.coords.iter_mut().zip(rhs.coords) {
            *a += b;
        }
        self
    }
}

impl Sub for NFElem {
    type Output = NFElem;
    fn sub(mut self, rhs: NFElem) -> NFElem {
        self.same_field(&rhs);
        for (a, b) in self.coords.iter_mut().zip(rhs.coords) {
            *a -= b;
        }
        self
    }
}

impl Neg for NFElem {
    type Output = NFElem;
    fn neg(mut self) -> NFElem {
        for a in self.coords.iter_mut() {
            *a = -core::mem::take(a);
        }
        self
    }
}

impl Mul for NFElem {
    type Output = NFElem;
    fn mul(self, rhs: NFElem) -> NFElem {
        self.same_field(&rhs);
        if self.field.is_rational() {
            let c = &self.coords[0] * &rhs.coords[0];
            return NFElem { field: self.field, coords: vec![c] };
        }
        let m = self.coords.len();
        let mut out = vec![BigInt::zero(); 2 * m - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        NFElem::reduced(self.field, out)
    }
}

impl Ring for NFElem {
    fn zero_like(&self) -> Self {
        NFElem { field: self.field.clone(), coords: vec![BigInt::zero(); self.coords.len()] }
    }

    fn one_like(&self) -> Self {
        self.int_like(&BigInt::one())
    }

    fn int_like(&self, n: &BigInt) -> Self {
        let mut e = self.zero_like();
        e.coords[0] = n.clone();
        e
    }

    fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if let Some(d) = divisor.as_integer() {
            let coords: Option<Vec<BigInt>> = self.coords.iter().map(|c| c.exact_div(d)).collect();
            return coords.map(|coords| NFElem { field: self.field.clone(), coords });
        }
        let sol = solve_rational(&self.field.mult_matrix(divisor), &self.coords)?;
        let coords: Option<Vec<BigInt>> = sol.into_iter().map(|r| r.is_integer().then(|| r.to_integer())).collect();
        coords.map(|coords| NFElem { field: self.field.clone(), coords })
    }
}
