use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::Ring;

/// Determinant by fraction-free (Bareiss) elimination.
///
/// Every intermediate entry is a minor of the input, so the divisions are
/// exact in any integral domain.
///
/// # Panics
///
/// Panics on an empty matrix.
pub fn det_bareiss<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    assert!(n > 0, "determinant of an empty matrix");
    let zero = m[0][0].zero_like();
    let mut prev = m[0][0].one_like();
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return zero,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].clone() * m[i][j].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num.exact_div(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Solves `a x = b` over ℚ for a square integer matrix; `None` if singular.
pub fn solve_rational(a: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut rows: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            row.iter().chain(core::iter::once(rhs)).map(|x| BigRational::from_integer(x.clone())).collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for x in rows[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &rows[col][c];
                    rows[r][c] = &rows[r][c] - delta;
                }
            }
        }
    }
    Some(rows.into_iter().map(|mut row| row.pop().unwrap()).collect())
}
