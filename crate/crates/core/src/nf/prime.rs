use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::{NFElem, NumberField};
use crate::arith::is_prime;
use crate::ff::{Fq, FqField, FqPoly};
use crate::{Error, Result};

/// A prime of `K` above `p`, given by a monic irreducible factor `h` of
/// `g mod p`. Its residue field is `𝔽_p[Y]/(h)`, of norm `p^{deg h}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResiduePrime {
    field: FqField,
    /// Lift of `h` with coefficients in `[0, p)`.
    h: Vec<BigInt>,
    multiplicity: u32,
    /// `p` divides `disc(g)`: the order `ℤ[θ]` may not be maximal at `p`.
    disc_flag: bool,
}

impl ResiduePrime {
    pub fn p(&self) -> &BigUint {
        self.field.characteristic()
    }

    pub fn residue_degree(&self) -> usize {
        self.field.degree()
    }

    pub fn norm(&self) -> &BigUint {
        self.field.order()
    }

    pub fn factor(&self) -> &[BigInt] {
        &self.h
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn ramified(&self) -> bool {
        self.multiplicity > 1
    }

    pub fn divides_discriminant(&self) -> bool {
        self.disc_flag
    }

    /// Usable for the criterion: unramified and away from `disc(g)`.
    pub fn usable(&self) -> bool {
        !self.disc_flag && self.multiplicity == 1
    }

    pub fn residue_field(&self) -> &FqField {
        &self.field
    }

    /// Image of `x` under `θ ↦ Y` in `𝔽_p[Y]/(h)`; rejected at flagged primes.
    pub fn reduce(&self, x: &NFElem) -> Result<Fq> {
        if !self.usable() {
            return Err(Error::FlaggedPrime(self.p().to_string()));
        }
        Ok(self.reduce_unchecked(x))
    }

    /// Reduction without the usability check, for reporting at flagged primes.
    pub fn reduce_unchecked(&self, x: &NFElem) -> Fq {
        self.field.from_coords(x.coords())
    }

    /// The prime `(p, h)` for a user-supplied `h`.
    pub fn from_factor(k: &Arc<NumberField>, p: &BigUint, h: &[BigInt]) -> Result<Self> {
        let base = FqField::prime(p)?;
        let hp = base.make_monic(&base.poly_from_ints(h));
        let g = base.poly_from_ints(k.polynomial().coeffs());
        if hp.degree().unwrap_or(0) == 0 || !base.poly_rem(&g, &hp).is_zero() || !base.is_irreducible(&hp) {
            return Err(Error::NotAFactor(super::format_poly(h, "y")));
        }
        let mut multiplicity = 0;
        let mut rest = g;
        loop {
            let (q, r) = base.poly_divrem(&rest, &hp);
            if !r.is_zero() {
                break;
            }
            multiplicity += 1;
            rest = q;
        }
        Ok(Self::build(k, &base, &hp, multiplicity))
    }

    fn build(k: &NumberField, base: &FqField, h: &FqPoly, multiplicity: u32) -> Self {
        let p = base.characteristic();
        let lifted: Vec<BigUint> = h.coeffs().iter().map(|c| base.as_prime_field(c).unwrap()).collect();
        let disc_flag = (k.discriminant() % BigInt::from(p.clone())).is_zero();
        ResiduePrime {
            field: FqField::new_unchecked(p.clone(), lifted.clone()),
            h: lifted.into_iter().map(BigInt::from).collect(),
            multiplicity,
            disc_flag,
        }
    }
}

impl NumberField {
    /// One [`ResiduePrime`] per irreducible factor of `g mod p`.
    pub fn residue_primes_above(self: &Arc<Self>, p: &BigUint) -> Result<Vec<ResiduePrime>> {
        if !is_prime(&BigInt::from(p.clone())) {
            return Err(Error::NotPrime(p.to_string()));
        }
        let base = FqField::prime(p)?;
        let g = base.poly_from_ints(self.polynomial().coeffs());
        Ok(base.factor_poly_mod(&g).into_iter().map(|(h, e)| ResiduePrime::build(self, &base, &h, e)).collect())
    }
}
