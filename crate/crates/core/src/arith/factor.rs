use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::primes::{is_prime_u, primes_up_to};

/// Work budget for [`factor_integer`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorEffort {
    pub trial_bound: u64,
    pub rho_rounds: u32,
    pub rho_iterations: u64,
    pub seed: u64,
}

impl Default for FactorEffort {
    fn default() -> Self {
        FactorEffort { trial_bound: 1_000_000, rho_rounds: 10, rho_iterations: 10_000_000, seed: 0x5eed_0fb1_61e7 }
    }
}

/// `sign · cofactor · ∏ p^e`; `cofactor == 1` means the factorization is
/// complete. The cofactor is a product of pieces the budget could not split
/// (each known composite).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(BigInt, u32)>,
    pub cofactor: BigInt,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_one()
    }

    pub fn value(&self) -> BigInt {
        let mut v = BigInt::from(self.sign) * &self.cofactor;
        for (p, e) in &self.factors {
            v *= p.pow(*e);
        }
        v
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Factorization of the product of the two values.
    pub fn mul(&self, other: &Factorization) -> Factorization {
        let mut out = self.clone();
        out.sign *= other.sign;
        out.cofactor *= &other.cofactor;
        for (p, e) in &other.factors {
            out.push(p.magnitude().clone(), *e);
        }
        out.factors.sort();
        out
    }

    pub fn pow(&self, e: u32) -> Factorization {
        Factorization {
            sign: if e % 2 == 0 && self.sign != 0 { 1 } else { self.sign },
            factors: self.factors.iter().map(|(p, k)| (p.clone(), k * e)).collect(),
            cofactor: self.cofactor.pow(e),
        }
    }

    fn push(&mut self, p: BigUint, e: u32) {
        let p = BigInt::from(p);
        match self.factors.iter_mut().find(|(q, _)| *q == p) {
            Some((_, old)) => *old += e,
            None => self.factors.push((p, e)),
        }
    }
}

/// `Some(r)` with `r² = n` when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// `n = r^k` with `k ≥ 2` maximal, for `n > 1`.
pub fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    if *n <= BigUint::one() {
        return None;
    }
    let mut best: Option<(BigUint, u32)> = None;
    let mut base = n.clone();
    let mut exp = 1u32;
    // Peel prime exponents until the base is no longer a power.
    'outer: loop {
        let limit = base.bits() as u32;
        for k in primes_up_to(limit as u64) {
            let k = k as u32;
            let r = base.nth_root(k);
            if r.pow(k) == base {
                base = r;
                exp *= k;
                best = Some((base.clone(), exp));
                continue 'outer;
            }
        }
        break;
    }
    best
}

/// Best-effort factorization: trial division, then for each remaining piece
/// a primality test, perfect-power detection and Brent's variant of Pollard
/// rho within `effort`. Deterministic for a fixed effort.
pub fn factor_integer(n: &BigInt, effort: &FactorEffort) -> Factorization {
    let sign = match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => return Factorization { sign: 0, factors: Vec::new(), cofactor: BigInt::zero() },
        Sign::Plus => 1,
    };
    let mut out = Factorization { sign, factors: Vec::new(), cofactor: BigInt::one() };
    let mut m = n.magnitude().clone();

    let bound = effort.trial_bound.max(2);
    let mut trial_limit_reached = true;
    for p in trial_divisors(bound) {
        if m.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            trial_limit_reached = false;
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            out.push(pb, e);
        }
    }
    if m.is_one() {
        return finish(out);
    }
    if !trial_limit_reached {
        // No divisor up to sqrt(m): m is prime.
        out.push(m, 1);
        return finish(out);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(effort.seed);
    let mut stack = alloc::vec![(m, 1u32)];
    while let Some((piece, mult)) = stack.pop() {
        if piece.is_one() {
            continue;
        }
        if is_prime_u(&piece) {
            out.push(piece, mult);
            continue;
        }
        if let Some((r, k)) = perfect_power(&piece) {
            stack.push((r, mult * k));
            continue;
        }
        match find_divisor(&piece, effort, &mut rng) {
            Some(d) => {
                let other = &piece / &d;
                stack.push((d, mult));
                stack.push((other, mult));
            }
            None => out.cofactor *= BigInt::from(piece).pow(mult),
        }
    }
    finish(out)
}

fn finish(mut f: Factorization) -> Factorization {
    f.factors.sort();
    f
}

fn trial_divisors(bound: u64) -> impl Iterator<Item = u64> {
    // 2, 3, then 6j ± 1; composites among them never divide after their
    // prime factors have been removed.
    [2u64, 3].into_iter().chain((1..).flat_map(|j: u64| [6 * j - 1, 6 * j + 1]).take_while(move |&d| d <= bound))
}

fn find_divisor(n: &BigUint, effort: &FactorEffort, rng: &mut ChaCha8Rng) -> Option<BigUint> {
    if let Some(small) = n.to_u64() {
        return (0..effort.rho_rounds)
            .find_map(|_| brent_u64(small, rng.next_u64() % (small - 3) + 1, effort.rho_iterations))
            .map(BigUint::from);
    }
    let bytes = (n.bits() as usize).div_ceil(8) + 8;
    (0..effort.rho_rounds).find_map(|_| {
        let mut buf = alloc::vec![0u8; bytes];
        rng.fill_bytes(&mut buf);
        let c = BigUint::from_bytes_le(&buf) % (n - 3u32) + 1u32;
        brent_big(n, &c, effort.rho_iterations)
    })
}

const BATCH: u64 = 128;

fn brent_u64(n: u64, c: u64, max_iter: u64) -> Option<u64> {
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let f = |x: u64| ((mulmod(x, x) as u128 + c as u128) % n as u128) as u64;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
    let (mut x, mut ys) = (y, y);
    let mut done = 0u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mulmod(q, x.abs_diff(y));
            }
            g = q.gcd(&n);
            k += BATCH;
        }
        done += r;
        r *= 2;
        if done > max_iter {
            break;
        }
    }
    if g == n {
        // Backtrack one step at a time from the last batch start.
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g > 1 && g < n).then_some(g)
}

fn brent_big(n: &BigUint, c: &BigUint, max_iter: u64) -> Option<BigUint> {
    let f = |x: &BigUint| (x * x + c) % n;
    let abs_diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let one = BigUint::one();
    let (mut y, mut r, mut q, mut g) = (BigUint::from(2u32), 1u64, one.clone(), one.clone());
    let (mut x, mut ys) = (y.clone(), y.clone());
    let mut done = 0u64;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = f(&y);
                q = (&q * abs_diff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += BATCH;
        }
        done += r;
        r *= 2;
        if done > max_iter {
            break;
        }
    }
    if g == *n {
        loop {
            ys = f(&ys);
            g = abs_diff(&x, &ys).gcd(n);
            if g > one {
                break;
            }
        }
    }
    (g > one && g < *n).then_some(g)
}
