use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};

use super::{inverse, CycleType};
use crate::arith::{exact_sqrt, factor_integer, FactorEffort, Factorization};
use crate::ball::{
    embed, isolate_at, reconstruct_integer, reconstruct_nf_element, CBall, CFloat, CertifiedRoots, MAX_BITS,
};
use crate::nf::{NFElem, NFPoly, NumberField};
use crate::{Error, Result};

/// Largest supported degree: `8! = 40320` permutations.
pub const MAX_DEGREE: usize = 8;

/// Working precisions tried, doubling from `start` up to `cap` bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ladder {
    pub start: u64,
    pub cap: u64,
}

impl Default for Ladder {
    fn default() -> Self {
        Ladder { start: 128, cap: MAX_BITS }
    }
}

/// The exact product of `c(σ)` over one cycle type.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassProduct {
    pub cycle_type: CycleType,
    pub class_size: BigUint,
    pub value: NFElem,
    /// For a type with a cycle of length ≥ 3 the class splits into pairs
    /// `{σ, σ⁻¹}` with `c(σ) = c(σ⁻¹)`; this is the product over one member
    /// of each pair, so `value = root²`.
    pub root: Option<NFElem>,
    /// Precision at which the value was certified.
    pub bits: u64,
}

impl ClassProduct {
    /// A square root of the value in `ℤ[θ]` when one is known.
    pub fn square_root(&self) -> Option<NFElem> {
        if let Some(r) = &self.root {
            return Some(r.clone());
        }
        let n = self.value.as_integer()?;
        exact_sqrt(n).map(|r| self.value.field().from_int(r))
    }

    pub fn norm(&self) -> BigInt {
        self.value.norm()
    }

    /// Best-effort factorization of the norm (the value itself over `ℚ`),
    /// going through the square root when there is one.
    pub fn factor(&self, effort: &FactorEffort) -> Factorization {
        match self.square_root() {
            Some(r) => {
                let mut fr = factor_integer(&r.norm(), effort).pow(2);
                if self.norm() < BigInt::from(0) {
                    fr.sign = -1;
                }
                fr
            }
            None => factor_integer(&self.norm(), effort),
        }
    }
}

/// `c(σ) = Σ α_i α_{σ(i)} - Σ α_i²` for root balls `α`.
pub fn c_sigma(roots: &CertifiedRoots, sigma: &[usize], prec: u64) -> CBall {
    let a = roots.roots();
    let mut s = CBall::zero();
    for (i, &j) in sigma.iter().enumerate() {
        s = s.add(&a[i].mul(&a[j], prec), prec);
        s = s.sub(&a[i].sqr(prec), prec);
    }
    s
}

pub fn class_product(f: &NFPoly, t: &CycleType, ladder: Ladder) -> Result<ClassProduct> {
    Ok(class_products(f, core::slice::from_ref(t), ladder)?.remove(0))
}

/// Exact class products for the given cycle types, all evaluated on one
/// precision ladder: a type is done once its product ball rounds to an
/// element at every embedding; the rest go to the next precision.
pub fn class_products(f: &NFPoly, types: &[CycleType], ladder: Ladder) -> Result<Vec<ClassProduct>> {
    let k = f.monic_degree()?;
    if k < 2 {
        return Err(Error::DegreeTooSmall(k, 2));
    }
    if k > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(k, MAX_DEGREE));
    }
    for t in types {
        if t.degree() != k || t.is_identity() {
            return Err(Error::Invalid(format!("{t} is not a non-identity cycle type of degree {k}")));
        }
    }
    let field = f.coeffs()[0].field().clone();
    let m = field.degree();
    let mut done: Vec<Option<ClassProduct>> = vec![None; types.len()];
    let mut warm: Vec<Option<Vec<CFloat>>> = vec![None; m];
    let mut prec = ladder.start.max(64).min(ladder.cap);
    loop {
        if let Some(embedded) = roots_at(f, &field, prec, &mut warm)? {
            let (thetas, roots) = embedded;
            let diffs: Vec<Vec<Vec<CBall>>> = roots.iter().map(|r| diff_table(r, prec)).collect();
            for (t, slot) in types.iter().zip(done.iter_mut()) {
                if slot.is_none() {
                    *slot = evaluate_type(t, &diffs, &field, thetas.as_ref(), prec)?;
                }
            }
        }
        if done.iter().all(Option::is_some) {
            return Ok(done.into_iter().map(Option::unwrap).collect());
        }
        if prec >= ladder.cap {
            return Err(Error::PrecisionCap(ladder.cap));
        }
        prec = (prec * 2).min(ladder.cap);
    }
}

type Embedded = (Option<CertifiedRoots>, Vec<CertifiedRoots>);

/// Roots of `f` under every embedding of `K` at precision `prec`, or `None`
/// if some isolation needs more precision.
fn roots_at(
    f: &NFPoly,
    field: &Arc<NumberField>,
    prec: u64,
    warm: &mut [Option<Vec<CFloat>>],
) -> Result<Option<Embedded>> {
    let thetas = if field.is_rational() { None } else { Some(field.embeddings(prec)?) };
    let mut all = Vec::with_capacity(warm.len());
    let mut ok = true;
    for (j, w) in warm.iter_mut().enumerate() {
        let coeffs: Vec<CBall> = match &thetas {
            None => f.coeffs().iter().map(|c| CBall::from_int(&c.coords()[0])).collect(),
            Some(th) => f.coeffs().iter().map(|c| embed(c, &th.roots()[j], prec)).collect(),
        };
        match isolate_at(&coeffs, prec, w.as_deref()) {
            Ok(r) => {
                *w = Some(r.roots().iter().map(|b| b.mid.clone()).collect());
                all.push(r);
            }
            Err((_, approx)) => {
                *w = Some(approx);
                ok = false;
            }
        }
    }
    Ok(ok.then_some((thetas, all)))
}

/// `D[i][j] = α_i α_j - α_i²`, so that `c(σ) = Σ_{σ(i) ≠ i} D[i][σ(i)]`.
fn diff_table(roots: &CertifiedRoots, prec: u64) -> Vec<Vec<CBall>> {
    let a = roots.roots();
    a.iter()
        .map(|ai| {
            let sq = ai.sqr(prec);
            a.iter().map(|aj| ai.mul(aj, prec).sub(&sq, prec)).collect()
        })
        .collect()
}

fn evaluate_type(
    t: &CycleType,
    diffs: &[Vec<Vec<CBall>>],
    field: &Arc<NumberField>,
    thetas: Option<&CertifiedRoots>,
    prec: u64,
) -> Result<Option<ClassProduct>> {
    let paired = !t.is_involutive();
    let mut lower = Vec::with_capacity(diffs.len());
    let mut upper = Vec::with_capacity(diffs.len());
    for d in diffs {
        let (mut lo, mut hi) = (CBall::from_int(&BigInt::from(1)), CBall::from_int(&BigInt::from(1)));
        t.for_each_permutation(&mut |s| {
            let mut c = CBall::zero();
            for (i, &j) in s.iter().enumerate() {
                if i != j {
                    c = c.add(&d[i][j], prec);
                }
            }
            if paired && *s > *inverse(s) {
                hi = hi.mul(&c, prec);
            } else {
                lo = lo.mul(&c, prec);
            }
        });
        lower.push(lo);
        upper.push(hi);
    }
    let full: Vec<CBall> = lower.iter().zip(&upper).map(|(a, b)| a.mul(b, prec)).collect();
    let Some(value) = rebuild(&full, field, thetas, prec)? else {
        return Ok(None);
    };
    let root = if paired {
        let (Some(a), Some(b)) = (rebuild(&lower, field, thetas, prec)?, rebuild(&upper, field, thetas, prec)?) else {
            return Ok(None);
        };
        if a != b || a.clone() * a.clone() != value {
            return Err(Error::Reconstruction(format!("square structure of class {t} violated")));
        }
        Some(a)
    } else {
        None
    };
    Ok(Some(ClassProduct { cycle_type: t.clone(), class_size: t.class_size(), value, root, bits: prec }))
}

/// Exact element from its embedding balls; `None` when more precision is
/// needed.
fn rebuild(
    vals: &[CBall],
    field: &Arc<NumberField>,
    thetas: Option<&CertifiedRoots>,
    prec: u64,
) -> Result<Option<NFElem>> {
    let r = match thetas {
        None => reconstruct_integer(&vals[0]).map(|n| field.from_int(n)),
        Some(th) => reconstruct_nf_element(vals, field, th, prec),
    };
    match r {
        Ok(x) => Ok(Some(x)),
        Err(Error::NotAnInteger) => Ok(None),
        Err(e) => Err(e),
    }
}
