use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigInt;

use super::{CBall, CFloat, Mag};
use crate::arith::ZPoly;
use crate::{Error, Result};

/// Hard ceiling of the precision ladder.
pub const MAX_BITS: u64 = 1 << 20;

/// Balls around the `k` roots of a polynomial, pairwise disjoint, each
/// containing exactly one root. The numbering (by real part, then imaginary
/// part of the centres) is fixed when the roots are isolated.
#[derive(Clone, Debug)]
pub struct CertifiedRoots {
    roots: Vec<CBall>,
    bits: u64,
}

impl CertifiedRoots {
    pub fn roots(&self) -> &[CBall] {
        &self.roots
    }

    /// Working precision at which the roots were certified.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Roots with a real centre whose ball is symmetric about the real axis.
    pub fn real_count(&self) -> usize {
        self.roots.iter().filter(|r| r.mid.im.is_zero()).count()
    }
}

/// Isolates the roots of a squarefree integer polynomial, doubling the
/// precision from `bits` until the inclusion discs are disjoint.
pub fn isolate_roots(f: &ZPoly, bits: u64) -> Result<CertifiedRoots> {
    let coeffs: Vec<CBall> = f.coeffs().iter().map(CBall::from_int).collect();
    isolate_with_escalation(&coeffs, bits, MAX_BITS)
}

/// As [`isolate_roots`] for ball coefficients, starting at `bits` and giving
/// up above `cap`.
pub fn isolate_with_escalation(coeffs: &[CBall], bits: u64, cap: u64) -> Result<CertifiedRoots> {
    let mut prec = bits.max(64);
    let mut start: Option<Vec<CFloat>> = None;
    loop {
        match isolate_at(coeffs, prec, start.as_deref()) {
            Ok(roots) => return Ok(roots),
            Err((_, approx)) if prec < cap => {
                start = Some(approx);
                prec = (prec * 2).min(cap);
            }
            Err((reason, _)) => {
                return Err(Error::Isolation { bits: prec, reason: format!("{reason}; precision cap reached") })
            }
        }
    }
}

/// One attempt at precision `prec`: Aberth–Ehrlich iteration on the centres,
/// then a rigorous inclusion radius `k·|f(z_i)| / |lc·∏_{j≠i}(z_i - z_j)|`
/// per approximation. The discs `D(z_i, r_i)` cover the roots and every
/// connected union of `m` discs holds `m` roots, so disjoint discs isolate.
///
/// On failure returns the reason and the current approximations so the next
/// attempt can resume from them.
pub fn isolate_at(
    coeffs: &[CBall],
    prec: u64,
    start: Option<&[CFloat]>,
) -> core::result::Result<CertifiedRoots, (alloc::string::String, Vec<CFloat>)> {
    let k = coeffs.len().saturating_sub(1);
    if k == 0 {
        return Ok(CertifiedRoots { roots: Vec::new(), bits: prec });
    }
    let lc = &coeffs[k];
    if lc.contains_zero() {
        return Err(("leading coefficient may vanish".into(), Vec::new()));
    }
    let mids: Vec<CFloat> = coeffs.iter().map(|c| c.mid.clone()).collect();
    let mut z = match start {
        Some(s) if s.len() == k => s.iter().map(|x| x.round(prec).0).collect(),
        _ => initial_points(&mids),
    };
    aberth(&mids, &mut z, prec);

    let kk = Mag::from_u64(k as u64);
    let lc_low = lc.abs_down();
    let mut balls = Vec::with_capacity(k);
    for i in 0..k {
        let zi = CBall::exact(z[i].clone());
        let val = horner(coeffs, &zi, prec);
        let mut denom = lc_low;
        for (j, zj) in z.iter().enumerate() {
            if j != i {
                denom = denom.mul_down(z[i].sub_exact(zj).abs_down());
            }
        }
        if denom.is_zero() {
            return Err(("coincident approximations".into(), z));
        }
        let rad = kk.mul(val.abs_up()).div(denom);
        balls.push(CBall::new(z[i].clone(), rad));
    }
    for i in 0..k {
        for j in i + 1..k {
            if balls[i].overlaps(&balls[j]) {
                return Err((format!("discs {i} and {j} overlap"), z));
            }
        }
    }
    balls.sort_by(|a, b| a.mid.re.cmp(&b.mid.re).then_with(|| a.mid.im.cmp(&b.mid.im)));
    Ok(CertifiedRoots { roots: balls, bits: prec })
}

/// Evaluates `Σ c_i z^i` in ball arithmetic.
pub fn horner(coeffs: &[CBall], z: &CBall, prec: u64) -> CBall {
    let mut acc = CBall::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, prec).add(c, prec);
    }
    acc
}

fn eval_mid(coeffs: &[CFloat], z: &CFloat, prec: u64) -> (CFloat, CFloat) {
    // value and derivative together
    let mut p = CFloat::zero();
    let mut dp = CFloat::zero();
    for c in coeffs.iter().rev() {
        dp = dp.mul(z, prec).0.add(&p, prec).0;
        p = p.mul(z, prec).0.add(c, prec).0;
    }
    (p, dp)
}

/// Points on a circle around the centroid of the roots, radius from
/// Fujiwara's bound, with an angular offset so that no start point lies on
/// a symmetry axis of a real polynomial.
fn initial_points(c: &[CFloat]) -> Vec<CFloat> {
    let k = c.len() - 1;
    let (lr, li) = c[k].to_f64();
    let lc2 = lr * lr + li * li;
    let ratio = |i: usize| {
        // |c_i / c_k|
        let (a, b) = c[i].to_f64();
        libm::sqrt((a * a + b * b) / lc2)
    };
    let mut bound: f64 = 0.0;
    for i in 1..=k {
        let r = ratio(k - i);
        let r = if i == k { r / 2.0 } else { r };
        bound = bound.max(libm::pow(r, 1.0 / i as f64));
    }
    bound *= 2.0;
    // centroid -c_{k-1}/(k c_k)
    let (a, b) = c[k - 1].to_f64();
    let (cr, ci) = (-(a * lr + b * li) / lc2 / k as f64, -(b * lr - a * li) / lc2 / k as f64);
    let radius = if bound.is_finite() && bound > 0.0 { bound } else { 1.0 };
    (0..k)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / k as f64 + 0.7;
            let (cr, ci) = if cr.is_finite() && ci.is_finite() { (cr, ci) } else { (0.0, 0.0) };
            CFloat::from_f64(cr + radius * libm::cos(t), ci + radius * libm::sin(t))
        })
        .collect()
}

fn aberth(c: &[CFloat], z: &mut [CFloat], prec: u64) {
    let k = z.len();
    let max_iter = 200 + 4 * (prec as usize).ilog2() as usize * k;
    for _ in 0..max_iter {
        let mut converged = true;
        for i in 0..k {
            let (p, dp) = eval_mid(c, &z[i], prec);
            if p.is_zero() {
                continue;
            }
            if dp.is_zero() {
                converged = false;
                z[i] = z[i].add(&CFloat::from_f64(1e-3, 1e-3), prec).0;
                continue;
            }
            let n = p.div(&dp, prec).0;
            let mut s = CFloat::zero();
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let d = z[i].sub(zj, prec).0;
                    if !d.is_zero() {
                        s = s.add(&d.inv(prec).0, prec).0;
                    }
                }
            }
            let denom = CFloat::from_int(&BigInt::from(1)).sub(&n.mul(&s, prec).0, prec).0;
            let w = if denom.is_zero() { n } else { n.div(&denom, prec).0 };
            let scale = z[i].top().max(0);
            if !w.is_zero() && w.top() > scale - prec as i64 + 4 {
                converged = false;
            }
            z[i] = z[i].sub(&w, prec).0;
        }
        if converged {
            break;
        }
    }
}
