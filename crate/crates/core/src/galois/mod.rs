//! Products of `c(σ) = Σ α_i α_{σ(i)} - T_2` over permutations of the roots.
//!
//! The product over one cycle type of `𝔖_k` is symmetric in the roots, hence
//! lies in the coefficient ring. It is evaluated in ball arithmetic over every
//! complex embedding of the base field and reconstructed exactly.

mod closed;
mod eval;
mod exclusion;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::{Error, Result};

pub use closed::closed_form_class;
pub use eval::{c_sigma, class_product, class_products, ClassProduct, Ladder, MAX_DEGREE};
pub use exclusion::{exclusion_value, group_product, ExclusionValue, Mode};

/// A partition of `k`, parts in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Invalid("cycle lengths must be positive".into()));
        }
        parts.sort_unstable();
        Ok(CycleType(parts))
    }

    /// `[1, …, 1, 2]`.
    pub fn transposition(k: usize) -> Self {
        let mut v = vec![1; k - 1];
        v[k - 2] = 2;
        CycleType(v)
    }

    /// Every non-identity cycle type of `𝔖_k`, in lexicographic order.
    pub fn all(k: usize) -> Vec<CycleType> {
        fn rec(rest: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<CycleType>) {
            if rest == 0 {
                out.push(CycleType(cur.clone()));
                return;
            }
            for part in min..=rest {
                cur.push(part);
                rec(rest - part, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(k, 1, &mut Vec::new(), &mut out);
        out.retain(|c| !c.is_identity());
        out.sort();
        out
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&l| l == 1)
    }

    /// Whether the permutations of this type lie in `𝔄_k`.
    pub fn is_even(&self) -> bool {
        self.0.iter().map(|l| l - 1).sum::<usize>() % 2 == 0
    }

    /// Every element is its own inverse.
    pub fn is_involutive(&self) -> bool {
        self.0.iter().all(|&l| l <= 2)
    }

    /// `k! / ∏ l^{m_l} m_l!`.
    pub fn class_size(&self) -> BigUint {
        let k = self.degree();
        let mut size: BigUint = (1..=k as u64).product();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let m = self.0[i..].iter().take_while(|&&x| x == l).count();
            let denom: BigUint = (1..=m as u64).product::<BigUint>() * BigUint::from(l).pow(m as u32);
            size /= denom;
            i += m;
        }
        size
    }

    /// Calls `visit` on every permutation of this type, as the image array
    /// `σ(0), …, σ(k-1)`.
    pub fn for_each_permutation(&self, visit: &mut dyn FnMut(&[usize])) {
        let k = self.degree();
        let mut counts = vec![0usize; k + 1];
        for &l in &self.0 {
            counts[l] += 1;
        }
        let mut sigma = vec![usize::MAX; k];
        let mut used = vec![false; k];
        next_cycle(&mut sigma, &mut used, &mut counts, visit);
    }
}

/// Opens a cycle at the smallest unused point.
fn next_cycle(sigma: &mut [usize], used: &mut [bool], counts: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
    let Some(start) = used.iter().position(|u| !u) else {
        visit(sigma);
        return;
    };
    used[start] = true;
    for l in 1..counts.len() {
        if counts[l] == 0 {
            continue;
        }
        counts[l] -= 1;
        grow_cycle(sigma, used, counts, start, start, l - 1, visit);
        counts[l] += 1;
    }
    used[start] = false;
}

/// Extends the cycle through `cur` by `left` more points, then closes it.
fn grow_cycle(
    sigma: &mut [usize],
    used: &mut [bool],
    counts: &mut [usize],
    start: usize,
    cur: usize,
    left: usize,
    visit: &mut dyn FnMut(&[usize]),
) {
    if left == 0 {
        sigma[cur] = start;
        next_cycle(sigma, used, counts, visit);
        sigma[cur] = usize::MAX;
        return;
    }
    for j in 0..sigma.len() {
        if used[j] {
            continue;
        }
        used[j] = true;
        sigma[cur] = j;
        grow_cycle(sigma, used, counts, start, j, left - 1, visit);
        sigma[cur] = usize::MAX;
        used[j] = false;
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

impl core::str::FromStr for CycleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: core::result::Result<Vec<usize>, _> = inner.split(',').map(|p| p.trim().parse()).collect();
        let parts = parts.map_err(|_| Error::Invalid(String::from("malformed cycle type")))?;
        CycleType::new(parts)
    }
}

/// Inverse permutation.
pub fn inverse(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    inv
}
