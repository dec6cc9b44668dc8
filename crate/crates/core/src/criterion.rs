//! The splitting criterion `N_𝔭(f) = k ⟺ T_{N(𝔭)+1} ≡ T_2 (mod 𝔭)`, checked
//! against a direct root count in the residue field.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::primes_up_to;
use crate::galois::ExclusionValue;
use crate::newton::NewtonSeq;
use crate::nf::{NFElem, NFPoly, ResiduePrime};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Split,
    NotSplit,
    /// `𝔭 | E`: no guarantee. `agrees` tells whether the congruence still
    /// matched the root count.
    Excluded {
        agrees: bool,
    },
    /// Not usable: ramified in `ℤ[θ]` or dividing the field discriminant.
    Skipped,
    /// The congruence contradicts the root count at a prime where it cannot.
    Mismatch,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Split => "split",
            Verdict::NotSplit => "not-split",
            Verdict::Excluded { agrees: true } => "excluded-agrees",
            Verdict::Excluded { agrees: false } => "excluded-disagrees",
            Verdict::Skipped => "skipped",
            Verdict::Mismatch => "MISMATCH",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrimeReport {
    pub prime: ResiduePrime,
    /// `N_𝔭(f)`, the number of distinct roots of `f mod 𝔭`.
    pub roots: Option<usize>,
    pub oracle_split: Option<bool>,
    pub congruence: Option<bool>,
    pub excluded: bool,
    pub verdict: Verdict,
}

/// `T_{N(𝔭)+1} ≡ T_2 (mod 𝔭)`.
pub fn congruence_test(seq: &NewtonSeq<NFElem>, p: &ResiduePrime) -> Result<bool> {
    if !p.usable() {
        return Err(Error::FlaggedPrime(p.p().to_string()));
    }
    let red = seq.reduce(p);
    let n = p.norm() + BigUint::one();
    Ok(red.term_trace(&n) == red.term_iter(2))
}

/// `N_𝔭(f)`.
pub fn root_count(f: &NFPoly, p: &ResiduePrime) -> Result<usize> {
    if !p.usable() {
        return Err(Error::FlaggedPrime(p.p().to_string()));
    }
    let fl = p.residue_field();
    let fbar = fl.poly(f.coeffs().iter().map(|c| p.reduce_unchecked(c)).collect());
    Ok(fl.count_roots(&fbar))
}

/// `N_𝔭(f) = k`.
pub fn oracle_split(f: &NFPoly, p: &ResiduePrime) -> Result<bool> {
    Ok(root_count(f, p)? == f.degree().unwrap_or(0))
}

/// Classifies one residue prime.
pub fn check_prime(seq: &NewtonSeq<NFElem>, p: &ResiduePrime, e: &ExclusionValue) -> PrimeReport {
    let excluded = e.is_zero() || e.divisible_by(p);
    if !p.usable() {
        return PrimeReport {
            prime: p.clone(),
            roots: None,
            oracle_split: None,
            congruence: None,
            excluded,
            verdict: Verdict::Skipped,
        };
    }
    let f = seq.polynomial();
    let roots = root_count(f, p).expect("usable prime");
    let oracle = roots == seq.degree();
    let cong = congruence_test(seq, p).expect("usable prime");
    let verdict = if oracle && !cong {
        // total splitting always forces the congruence
        Verdict::Mismatch
    } else if excluded {
        Verdict::Excluded { agrees: oracle == cong }
    } else if oracle != cong {
        Verdict::Mismatch
    } else if oracle {
        Verdict::Split
    } else {
        Verdict::NotSplit
    };
    PrimeReport {
        prime: p.clone(),
        roots: Some(roots),
        oracle_split: Some(oracle),
        congruence: Some(cong),
        excluded,
        verdict,
    }
}

/// Reports for every residue prime above the rational prime `p`.
pub fn check_rational_prime(seq: &NewtonSeq<NFElem>, p: u64, e: &ExclusionValue) -> Result<Vec<PrimeReport>> {
    let field = e.value.field();
    let primes = field.residue_primes_above(&BigUint::from(p))?;
    Ok(primes.iter().map(|q| check_prime(seq, q, e)).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub bound: u64,
    pub rational_primes: usize,
    /// Ordered by rational prime, then by the factor `h`.
    pub reports: Vec<PrimeReport>,
}

impl ScanReport {
    pub fn new(bound: u64, rational_primes: usize, mut reports: Vec<PrimeReport>) -> Self {
        reports.sort_by(|a, b| {
            a.prime.p().cmp(b.prime.p()).then_with(|| {
                let (x, y) = (a.prime.factor(), b.prime.factor());
                x.len().cmp(&y.len()).then_with(|| x.iter().rev().cmp(y.iter().rev()))
            })
        });
        ScanReport { bound, rational_primes, reports }
    }

    pub fn with(&self, pred: impl Fn(&Verdict) -> bool) -> impl Iterator<Item = &PrimeReport> {
        self.reports.iter().filter(move |r| pred(&r.verdict))
    }

    pub fn split(&self) -> impl Iterator<Item = &PrimeReport> {
        self.with(|v| *v == Verdict::Split)
    }

    pub fn excluded(&self) -> impl Iterator<Item = &PrimeReport> {
        self.with(|v| matches!(v, Verdict::Excluded { .. }))
    }

    pub fn skipped(&self) -> impl Iterator<Item = &PrimeReport> {
        self.with(|v| *v == Verdict::Skipped)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &PrimeReport> {
        self.with(|v| *v == Verdict::Mismatch)
    }

    /// Re-checks the aggregate invariants: no mismatch, and every excluded
    /// prime divides `E` (exact divisibility of `E`, or of `Norm(E)` over a
    /// number field) unless `E = 0`.
    pub fn verify(&self, e: &ExclusionValue) -> core::result::Result<(), String> {
        if let Some(m) = self.mismatches().next() {
            return Err(format!("criterion violated at the prime above {} ({:?})", m.prime.p(), m.prime.factor()));
        }
        if e.is_zero() {
            return Ok(());
        }
        let norm = e.norm();
        for r in self.excluded() {
            let p = BigInt::from(r.prime.p().clone());
            let divides = match e.value.as_integer() {
                Some(v) => (v % &p).is_zero(),
                None => (&norm % &p).is_zero() && e.divisible_by(&r.prime),
            };
            if !divides {
                return Err(format!("excluded prime {p} does not divide the exclusion value"));
            }
        }
        Ok(())
    }
}

/// Checks every residue prime above every rational prime up to `bound`.
pub fn scan(seq: &NewtonSeq<NFElem>, e: &ExclusionValue, bound: u64) -> Result<ScanReport> {
    let primes = primes_up_to(bound);
    let mut reports = Vec::new();
    for &p in &primes {
        reports.extend(check_rational_prime(seq, p, e)?);
    }
    Ok(ScanReport::new(bound, primes.len(), reports))
}

/// Principality read off the splitting in a Hilbert class field generated
/// by a root of `f`: a prime is principal iff `f` splits totally modulo it.
/// Away from `E` the criterion decides; at excluded primes prime to `Δ_f`
/// the root count does; at primes dividing `Δ_f` it is left undetermined.
pub fn principal(report: &PrimeReport, e: &ExclusionValue) -> Option<bool> {
    match report.verdict {
        Verdict::Split => Some(true),
        Verdict::NotSplit => Some(false),
        Verdict::Excluded { .. } => {
            let p = &report.prime;
            let d = p.reduce_unchecked(&e.discriminant);
            if p.residue_field().is_zero(&d) {
                None
            } else {
                report.oracle_split
            }
        }
        Verdict::Skipped | Verdict::Mismatch => None,
    }
}
