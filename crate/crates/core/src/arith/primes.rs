use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const SMALL_PRIMES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Bases 2..41 give a deterministic Miller–Rabin test below this bound.
const MR_DETERMINISTIC_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

/// Sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Primality test; zero, one and negative numbers are not prime.
pub fn is_prime(n: &BigInt) -> bool {
    match n.sign() {
        Sign::Plus => is_prime_u(n.magnitude()),
        _ => false,
    }
}

pub(crate) fn is_prime_u(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &SMALL_PRIMES {
        if (n % p).is_zero() {
            return false;
        }
    }
    if n.to_u128().is_some_and(|v| v < MR_DETERMINISTIC_BOUND) {
        return SMALL_PRIMES.iter().all(|&a| strong_probable_prime(n, &BigUint::from(a)));
    }
    strong_probable_prime(n, &BigUint::from(2u32)) && strong_lucas(n)
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = p as u64;
        if n % p == 0 {
            return n == p;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    // The first 12 primes are deterministic for all 64-bit inputs.
    'witness: for &a in &SMALL_PRIMES[..12] {
        let mut x = 1u64;
        let (mut base, mut e) = (a as u64 % n, d);
        while e > 0 {
            if e & 1 == 1 {
                x = mulmod(x, base);
            }
            base = mulmod(base, base);
            e >>= 1;
        }
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n1 {
            return true;
        }
    }
    false
}

fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    let n = BigInt::from(n.clone());
    let mut a = a.mod_floor(&n);
    let mut n = n;
    let mut result = 1;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        core::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge's parameters.
fn strong_lucas(n: &BigUint) -> bool {
    if n.sqrt().pow(2) == *n {
        return false;
    }
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, n) {
            -1 => break,
            0 if d.magnitude() != n => return false,
            _ => {}
        }
        let two = BigInt::from(2);
        d = if d.sign() == Sign::Plus { -(d + two) } else { two - d };
    }
    let ni = BigInt::from(n.clone());
    let p = BigInt::one();
    let q: BigInt = (BigInt::one() - &d) / 4;
    let md = |x: BigInt| x.mod_floor(&ni);
    let half = |x: BigInt| {
        let x = md(x);
        if x.is_odd() {
            (x + &ni) >> 1
        } else {
            x >> 1
        }
    };

    let n1 = BigInt::from(n + 1u32);
    let s = n1.trailing_zeros().unwrap_or(0);
    let dd = &n1 >> s;

    // Binary ladder for U_dd, V_dd, Q^dd.
    let (mut u, mut v, mut qk) = (BigInt::one(), md(p.clone()), md(q.clone()));
    let bits = dd.bits();
    for i in (0..bits - 1).rev() {
        u = md(&u * &v);
        v = md(&v * &v - (&qk << 1));
        qk = md(&qk * &qk);
        if dd.bit(i) {
            let nu = half(&p * &u + &v);
            let nv = half(&d * &u + &p * &v);
            u = nu;
            v = nv;
            qk = md(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = md(&v * &v - (&qk << 1));
        qk = md(&qk * &qk);
        if v.is_zero() {
            return true;
        }
    }
    false
}
