use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{class_products, ClassProduct, CycleType, Ladder};
use crate::arith::{discriminant, factor_integer, FactorEffort, Factorization, Ring};
use crate::nf::{NFElem, NFPoly, ResiduePrime};
use crate::{Error, Result};

/// Which obstruction value guards the criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `Δ_f · B_f` with `Gal(f) = 𝔖_k`: every class.
    Sym,
    /// `Δ_f · B_f` with `Gal(f) = 𝔄_k`: the even classes.
    Alt,
    /// The product of every non-identity class of `𝔖_k`, valid whatever the
    /// Galois group is (it is a multiple of `B_f` and contains `±Δ_f`).
    Classes,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Sym => "sym",
            Mode::Alt => "alt",
            Mode::Classes => "classes",
        }
    }

    /// The cycle types multiplied together in this mode.
    pub fn cycle_types(self, k: usize) -> Vec<CycleType> {
        let mut all = CycleType::all(k);
        if self == Mode::Alt {
            all.retain(CycleType::is_even);
        }
        all
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sym" => Ok(Mode::Sym),
            "alt" => Ok(Mode::Alt),
            "classes" => Ok(Mode::Classes),
            _ => Err(Error::Invalid(alloc::format!("unknown mode {s:?} (expected sym, alt or classes)"))),
        }
    }
}

/// `B_f` for `Gal(f) = 𝔖_k` or `𝔄_k`, with the class products it is made of.
pub fn group_product(f: &NFPoly, mode: Mode, ladder: Ladder) -> Result<(NFElem, Vec<ClassProduct>)> {
    if mode == Mode::Classes {
        return Err(Error::Invalid("the group product needs mode sym or alt".into()));
    }
    let k = f.monic_degree()?;
    let classes = class_products(f, &mode.cycle_types(k), ladder)?;
    let one = f.coeffs()[0].one_like();
    let b = classes.iter().fold(one, |acc, c| acc * c.value.clone());
    Ok((b, classes))
}

/// The value `E` whose prime divisors are excluded from the criterion.
#[derive(Clone, Debug, PartialEq)]
pub struct ExclusionValue {
    pub mode: Mode,
    pub discriminant: NFElem,
    pub classes: Vec<ClassProduct>,
    /// `B_f` in the group modes.
    pub group_product: Option<NFElem>,
    pub value: NFElem,
}

impl ExclusionValue {
    /// `E = 0`: the criterion gives no guarantee at any prime.
    pub fn is_zero(&self) -> bool {
        Ring::is_zero(&self.value)
    }

    pub fn norm(&self) -> BigInt {
        self.value.norm()
    }

    /// Whether the residue prime divides `E`.
    pub fn divisible_by(&self, p: &ResiduePrime) -> bool {
        match self.value.as_integer() {
            Some(n) => Zero::is_zero(&(n % BigInt::from(p.p().clone()))),
            None => p.residue_field().is_zero(&p.reduce_unchecked(&self.value)),
        }
    }

    /// Factorization of `Norm(E)`, assembled from the factorizations of the
    /// pieces `E` is a product of.
    pub fn factor(&self, effort: &FactorEffort) -> Factorization {
        if self.is_zero() {
            return Factorization { sign: 0, factors: Vec::new(), cofactor: BigInt::zero() };
        }
        let mut acc = Factorization { sign: 1, factors: Vec::new(), cofactor: BigInt::from(1) };
        if self.mode != Mode::Classes {
            acc = acc.mul(&factor_integer(&self.discriminant.norm(), effort));
        }
        for c in &self.classes {
            acc = acc.mul(&c.factor(effort));
        }
        acc
    }
}

/// `Δ_f · B_f` (modes sym, alt) or the product of all class products.
pub fn exclusion_value(f: &NFPoly, mode: Mode, ladder: Ladder) -> Result<ExclusionValue> {
    let disc = discriminant(f)?;
    if Ring::is_zero(&disc) {
        return Err(Error::NotSquarefree);
    }
    let k = f.monic_degree()?;
    let classes = class_products(f, &mode.cycle_types(k), ladder)?;
    let prod = classes.iter().fold(disc.one_like(), |acc, c| acc * c.value.clone());
    let (group_product, value) = match mode {
        Mode::Classes => (None, prod),
        _ => (Some(prod.clone()), disc.clone() * prod),
    };
    Ok(ExclusionValue { mode, discriminant: disc, classes, group_product, value })
}
