use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{CBall, CertifiedRoots, Float, Mag};
use crate::arith::solve_rational;
use crate::nf::{NFElem, NumberField};
use crate::{Error, Result};

/// The unique integer in a ball with radius and imaginary part small enough
/// (`rad < 1/4`, `|im| + rad < 1/4`) that rounding is certain.
pub fn reconstruct_integer(b: &CBall) -> Result<BigInt> {
    let quarter = Mag::pow2(-2);
    if b.rad >= quarter || b.mid.im.mag_up().add(b.rad) >= quarter {
        return Err(Error::NotAnInteger);
    }
    let n = b.mid.re.nearest_integer();
    // The ball must actually reach the integer it rounds to.
    let dist = b.mid.re.sub(&Float::from_int(&n)).mag_down();
    let im = b.mid.im.mag_down();
    if dist.mul_down(dist).add_down(im.mul_down(im)).sqrt_down() > b.rad {
        return Err(Error::NotAnInteger);
    }
    Ok(n)
}

/// Recovers `x ∈ ℤ[θ]` from its images `values[j] = σ_j(x)` under the
/// embeddings `θ ↦ θ_j`.
///
/// The traces `Tr(θ^i x) = Σ_j θ_j^i σ_j(x)` are rational integers, so they
/// are rounded exactly; the coordinates then solve the integer linear system
/// `Σ_l Tr(θ^{i+l}) c_l = Tr(θ^i x)`. The result is re-embedded and checked
/// against the input balls.
pub fn reconstruct_nf_element(
    values: &[CBall],
    k: &Arc<NumberField>,
    thetas: &CertifiedRoots,
    prec: u64,
) -> Result<NFElem> {
    let m = k.degree();
    if values.len() != m || thetas.len() != m {
        return Err(Error::Invalid(format!("expected {m} embedding values")));
    }
    if m == 1 {
        return Ok(k.from_int(reconstruct_integer(&values[0])?));
    }
    let mut traces = Vec::with_capacity(m);
    let mut powers: Vec<CBall> = values.to_vec();
    for i in 0..m {
        if i > 0 {
            for (p, t) in powers.iter_mut().zip(thetas.roots()) {
                *p = p.mul(t, prec);
            }
        }
        let sum = powers.iter().fold(CBall::zero(), |acc, p| acc.add(p, prec));
        traces.push(reconstruct_integer(&sum)?);
    }
    let s = k.power_sums();
    let h: Vec<Vec<BigInt>> = (0..m).map(|i| (0..m).map(|l| s[i + l].clone()).collect()).collect();
    let sol = solve_rational(&h, &traces).ok_or_else(|| Error::Reconstruction("singular trace form".into()))?;
    let mut coords = Vec::with_capacity(m);
    for c in sol {
        if !c.is_integer() {
            return Err(Error::Reconstruction(format!("non-integral coordinate {c}")));
        }
        coords.push(c.to_integer());
    }
    let x = k.elem(coords);
    for (v, t) in values.iter().zip(thetas.roots()) {
        let e = embed(&x, t, prec);
        if !e.overlaps(v) {
            return Err(Error::Reconstruction(format!("residual check failed for {x}")));
        }
    }
    Ok(x)
}

/// `Σ c_l t^l` in ball arithmetic.
pub fn embed(x: &NFElem, t: &CBall, prec: u64) -> CBall {
    let coeffs: Vec<CBall> = x.coords().iter().map(|c| CBall::from_int_prec(c, prec)).collect();
    super::horner(&coeffs, t, prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ZPoly;
    use crate::ball::CFloat;

    fn ball(re: f64, rad: f64) -> CBall {
        CBall::new(CFloat::from_f64(re, 0.0), Float::from_f64(rad).mag_up())
    }

    #[test]
    fn integer_rounding() {
        assert_eq!(reconstruct_integer(&ball(4.0000001, 1e-5)), Ok(BigInt::from(4)));
        assert_eq!(reconstruct_integer(&ball(3.6, 0.3)), Err(Error::NotAnInteger));
        // small radius but far from any integer
        assert_eq!(reconstruct_integer(&ball(3.4, 0.01)), Err(Error::NotAnInteger));
        assert_eq!(reconstruct_integer(&ball(-7.0, 0.0)), Ok(BigInt::from(-7)));
    }

    #[test]
    fn element_roundtrip() {
        let k = NumberField::new(ZPoly::from_i64s(&[14, -2, 7, 0, 1])).unwrap();
        let thetas = k.embeddings(256).unwrap();
        let x = k.elem([-41, 18, -9].map(BigInt::from).to_vec());
        let values: Vec<CBall> = thetas.roots().iter().map(|t| embed(&x, t, 256)).collect();
        assert_eq!(reconstruct_nf_element(&values, &k, &thetas, 256).unwrap(), x);
        let seven: Vec<CBall> = (0..4).map(|_| CBall::from_int(&BigInt::from(7))).collect();
        assert_eq!(reconstruct_nf_element(&seven, &k, &thetas, 256).unwrap(), k.from_int(BigInt::from(7)));
    }
}
