use alloc::format;

use super::CycleType;
use crate::arith::{discriminant, Poly, Ring};
use crate::{Error, Result};

/// A polynomial in `e_1..e_4`: terms `(coefficient, exponents)`.
type Terms = &'static [(i64, [u32; 4])];

const K3_3: Terms = &[(1, [2, 0, 0, 0]), (-3, [0, 1, 0, 0])];

const K4_22: Terms = &[
    (-1, [6, 0, 0, 0]),
    (8, [4, 1, 0, 0]),
    (-4, [3, 0, 1, 0]),
    (-20, [2, 2, 0, 0]),
    (24, [2, 0, 0, 1]),
    (8, [1, 1, 1, 0]),
    (16, [0, 3, 0, 0]),
    (-64, [0, 1, 0, 1]),
    (8, [0, 0, 2, 0]),
];

const K4_13: Terms = &[
    (3, [5, 0, 1, 0]),
    (-1, [4, 2, 0, 0]),
    (-3, [4, 0, 0, 1]),
    (-19, [3, 1, 1, 0]),
    (6, [2, 3, 0, 0]),
    (16, [2, 1, 0, 1]),
    (8, [2, 0, 2, 0]),
    (30, [1, 2, 1, 0]),
    (8, [1, 0, 1, 1]),
    (-9, [0, 4, 0, 0]),
    (-24, [0, 2, 0, 1]),
    (-24, [0, 1, 2, 0]),
    (-16, [0, 0, 0, 2]),
];

const K4_4: Terms = &[
    (1, [6, 0, 0, 0]),
    (-8, [4, 1, 0, 0]),
    (1, [3, 0, 1, 0]),
    (21, [2, 2, 0, 0]),
    (-3, [2, 0, 0, 1]),
    (-3, [1, 1, 1, 0]),
    (-18, [0, 3, 0, 0]),
    (8, [0, 1, 0, 1]),
    (1, [0, 0, 2, 0]),
];

fn eval<R: Ring>(terms: Terms, e: &[R; 4]) -> R {
    terms.iter().fold(e[0].zero_like(), |acc, (c, exps)| {
        let mut m = e[0].small_like(*c);
        for (x, &n) in e.iter().zip(exps) {
            for _ in 0..n {
                m = m * x.clone();
            }
        }
        acc + m
    })
}

/// The class product over `ct` for `deg f ≤ 4`, as a polynomial in the
/// elementary symmetric functions of the roots, with no numerics.
///
/// The transposition class is `(-1)^{k(k-1)/2} disc(f)`; the remaining
/// classes of `𝔖_3` and `𝔖_4` are explicit polynomials in `e_1..e_4`, those
/// with a cycle of length ≥ 3 being squares.
pub fn closed_form_class<R: Ring>(f: &Poly<R>, ct: &CycleType) -> Result<R> {
    let k = f.monic_degree()?;
    if !(2..=4).contains(&k) {
        return Err(Error::Invalid(format!("closed forms cover degrees 2 to 4, not {k}")));
    }
    if ct.degree() != k || ct.is_identity() {
        return Err(Error::Invalid(format!("{ct} is not a non-identity cycle type of degree {k}")));
    }
    if *ct == CycleType::transposition(k) {
        let d = discriminant(f)?;
        return Ok(if (k * (k - 1) / 2) % 2 == 0 { d } else { -d });
    }
    let es = f.elementary_symmetric()?;
    let zero = es[0].zero_like();
    let e: [R; 4] = core::array::from_fn(|i| es.get(i).cloned().unwrap_or_else(|| zero.clone()));
    let sq = |x: R| x.clone() * x;
    Ok(match (k, ct.parts()) {
        (3, [3]) => sq(eval(K3_3, &e)),
        (4, [2, 2]) => eval(K4_22, &e),
        (4, [1, 3]) => sq(eval(K4_13, &e)),
        (4, [4]) => sq(eval(K4_4, &e)),
        _ => unreachable!("every non-identity type of degree ≤ 4 is covered"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ZPoly;
    use num_bigint::BigInt;

    fn cf(c: &[i64], t: &[usize]) -> BigInt {
        closed_form_class(&ZPoly::from_i64s(c), &CycleType::new(t.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn quartic_and_cubic_values() {
        let q = [-1, -1, 0, 0, 1];
        assert_eq!(cf(&q, &[1, 1, 2]), BigInt::from(-283));
        assert_eq!(cf(&q, &[2, 2]), BigInt::from(8));
        assert_eq!(cf(&q, &[1, 3]), BigInt::from(256));
        assert_eq!(cf(&q, &[4]), BigInt::from(1));
        assert_eq!(cf(&[-1, -1, 0, 1], &[3]), BigInt::from(9));
        assert_eq!(cf(&[-1, -1, 0, 1], &[1, 2]), BigInt::from(23));
        assert_eq!(cf(&[1, 0, 1], &[2]), BigInt::from(4));
        // cyclotomic: the 4-cycles collapse
        let c5 = [1, 1, 1, 1, 1];
        assert_eq!(cf(&c5, &[4]), BigInt::from(0));
        assert_eq!(cf(&c5, &[2, 2]), BigInt::from(-25));
        assert!(closed_form_class(&ZPoly::from_i64s(&[-1, -1, 0, 0, 0, 1]), &CycleType::new(alloc::vec![5]).unwrap())
            .is_err());
    }
}
