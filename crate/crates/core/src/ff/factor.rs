use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use super::{FqField, FqPoly};

impl FqField {
    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by (degree, coefficients). Leading constants are dropped.
    ///
    /// Squarefree decomposition, then distinct-degree, then Cantor–Zassenhaus
    /// equal-degree splitting with randomness seeded from `(p, h, g)`.
    pub fn factor_poly_mod(&self, g: &FqPoly) -> Vec<(FqPoly, u32)> {
        assert!(!g.is_zero(), "factoring the zero polynomial");
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed_for(g));
        let mut out = Vec::new();
        for (sqf, mult) in self.squarefree(&self.make_monic(g)) {
            for (block, d) in self.distinct_degree(&sqf) {
                for f in self.equal_degree(&block, d, &mut rng) {
                    out.push((f, mult));
                }
            }
        }
        out.sort_by(|(a, _), (b, _)| {
            a.degree().cmp(&b.degree()).then_with(|| {
                let key = |p: &FqPoly| p.coeffs().iter().map(|c| c.coords().to_vec()).collect::<Vec<_>>();
                key(a).cmp(&key(b))
            })
        });
        out
    }

    /// Whether a polynomial of degree ≥ 1 is irreducible: `f | X^{q^d} - X`
    /// and `gcd(X^{q^e} - X, f) = 1` for every maximal proper divisor `e` of `d`.
    pub fn is_irreducible(&self, f: &FqPoly) -> bool {
        let d = match f.degree() {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        let f = self.make_monic(f);
        let x = self.x();
        let frob = |e: usize| {
            let mut h = self.poly_rem(&x, &f);
            for _ in 0..e {
                h = self.pow_mod(&h, self.order(), &f);
            }
            h
        };
        if !self.poly_sub(&frob(d), &self.poly_rem(&x, &f)).is_zero() {
            return false;
        }
        prime_divisors(d).into_iter().all(|r| {
            let g = self.gcd_mod(&self.poly_sub(&frob(d / r), &x), &f);
            g.degree() == Some(0)
        })
    }

    fn seed_for(&self, g: &FqPoly) -> u64 {
        // FNV-1a over the characteristic, modulus and input coefficients.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                h ^= b as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
            h ^= 0xff;
            h = h.wrapping_mul(0x0100_0000_01b3);
        };
        eat(&self.characteristic().to_bytes_le());
        for c in self.modulus() {
            eat(&c.to_bytes_le());
        }
        for c in g.coeffs() {
            for x in c.coords() {
                eat(&x.to_bytes_le());
            }
        }
        h
    }

    fn squarefree(&self, f: &FqPoly) -> Vec<(FqPoly, u32)> {
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let mut c = self.gcd_mod(f, &self.derivative(f));
        let mut w = self.poly_divrem(f, &c).0;
        let mut i = 1;
        while w.degree() != Some(0) {
            let y = self.gcd_mod(&w, &c);
            let fac = self.poly_divrem(&w, &y).0;
            if fac.degree() != Some(0) {
                out.push((self.make_monic(&fac), i));
            }
            c = self.poly_divrem(&c, &y).0;
            w = y;
            i += 1;
        }
        if c.degree() != Some(0) {
            // c is a polynomial in X^p.
            let p = self.characteristic();
            let step = usize::try_from(p).expect("nontrivial p-th power implies small p");
            let root: Vec<_> = c.coeffs().iter().step_by(step).map(|a| self.pth_root(a)).collect();
            let pu = u32::try_from(p).unwrap();
            for (g, e) in self.squarefree(&self.poly(root)) {
                out.push((g, e * pu));
            }
        }
        out
    }

    /// Splits a squarefree monic `f` into products of irreducibles of equal degree.
    fn distinct_degree(&self, f: &FqPoly) -> Vec<(FqPoly, usize)> {
        let mut out = Vec::new();
        let mut rest = f.clone();
        let x = self.x();
        let mut h = self.poly_rem(&x, &rest);
        let mut d = 0;
        while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = self.pow_mod(&h, self.order(), &rest);
            let g = self.gcd_mod(&self.poly_sub(&h, &x), &rest);
            if g.degree() != Some(0) {
                rest = self.poly_divrem(&rest, &g).0;
                h = self.poly_rem(&h, &rest);
                out.push((g, d));
            }
        }
        if let Some(deg) = rest.degree().filter(|&n| n > 0) {
            out.push((self.make_monic(&rest), deg));
        }
        out
    }

    fn equal_degree(&self, f: &FqPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FqPoly> {
        let n = f.degree().unwrap();
        if n == d {
            return vec![f.clone()];
        }
        let q = self.order();
        let two = BigUint::from(2u32);
        loop {
            let a = self.poly((0..n).map(|_| self.random(rng)).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if q.is_even() {
                // Absolute trace 𝔽_{q^d} → 𝔽_2: a + a² + a⁴ + … .
                let m = (q.bits() as usize - 1) * d;
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..m {
                    t = self.pow_mod(&t, &two, f);
                    acc = self.poly_add(&acc, &t);
                }
                acc
            } else {
                let e = (q.pow(d as u32) - BigUint::one()) / 2u32;
                self.poly_sub(&self.pow_mod(&a, &e, f), &self.poly_one())
            };
            let g = self.gcd_mod(&b, f);
            let dg = g.degree().unwrap_or(0);
            if dg > 0 && dg < n {
                let h = self.poly_divrem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&self.make_monic(&h), d, rng));
                return out;
            }
        }
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
