//! JSON documents. Key names are fixed; integers that can exceed 64 bits
//! are decimal strings.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use splitlaw_core::arith::{FactorEffort, Factorization};
use splitlaw_core::criterion::{principal, PrimeReport, ScanReport};
use splitlaw_core::galois::{ClassProduct, ExclusionValue};
use splitlaw_core::nf::{NFElem, NumberField, ResiduePrime};

use crate::parse::format_elem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    pub prime: String,
    pub exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationJson {
    pub sign: i8,
    pub factors: Vec<PrimePower>,
    pub cofactor: String,
}

impl From<&Factorization> for FactorizationJson {
    fn from(f: &Factorization) -> Self {
        FactorizationJson {
            sign: f.sign,
            factors: f.factors.iter().map(|(p, e)| PrimePower { prime: p.to_string(), exponent: *e }).collect(),
            cofactor: f.cofactor.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub cycle_type: String,
    pub class_size: String,
    /// The element, as a polynomial in `y` over a number field.
    pub value: String,
    /// `Norm_{K/ℚ}(value)`; the value itself over `ℚ`.
    pub norm: String,
    /// Factorization of the norm, when requested.
    pub factorization: Option<FactorizationJson>,
    pub is_square: bool,
    pub square_root: Option<String>,
    pub bits: u64,
}

impl ClassJson {
    pub fn new(c: &ClassProduct, effort: Option<&FactorEffort>) -> Self {
        let root = c.square_root();
        ClassJson {
            cycle_type: c.cycle_type.to_string(),
            class_size: c.class_size.to_string(),
            value: format_elem(&c.value),
            norm: c.norm().to_string(),
            factorization: effort.map(|e| (&c.factor(e)).into()),
            is_square: root.is_some(),
            square_root: root.as_ref().map(format_elem),
            bits: c.bits,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionJson {
    pub value: String,
    pub norm: String,
    pub group_product: Option<String>,
    /// `E = 0`: no prime is covered by the criterion.
    pub vanishes: bool,
    pub sign: i8,
    pub prime_support: Vec<PrimePower>,
    pub cofactor: String,
}

impl ExclusionJson {
    pub fn new(e: &ExclusionValue, effort: Option<&FactorEffort>) -> Self {
        let fact = effort.map(|eff| e.factor(eff));
        let norm = e.norm();
        ExclusionJson {
            value: format_elem(&e.value),
            norm: norm.to_string(),
            group_product: e.group_product.as_ref().map(format_elem),
            vanishes: e.is_zero(),
            sign: fact.as_ref().map_or_else(|| sign_of(&norm), |f| f.sign),
            prime_support: fact
                .as_ref()
                .map(|f| f.factors.iter().map(|(p, k)| PrimePower { prime: p.to_string(), exponent: *k }).collect())
                .unwrap_or_default(),
            cofactor: fact.map_or_else(|| norm.magnitude().to_string(), |f| f.cofactor.to_string()),
        }
    }
}

fn sign_of(n: &BigInt) -> i8 {
    match n.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeJson {
    pub p: String,
    /// The factor `h` of the field polynomial modulo `p`; absent over `ℚ`.
    pub factor: Option<String>,
    pub degree: usize,
    pub norm: String,
}

impl PrimeJson {
    pub fn new(p: &ResiduePrime, field: &NumberField) -> Self {
        PrimeJson {
            p: p.p().to_string(),
            factor: (!field.is_rational()).then(|| splitlaw_core::nf::format_poly(p.factor(), "y")),
            degree: p.residue_degree(),
            norm: p.norm().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeReportJson {
    pub prime: PrimeJson,
    pub roots: Option<usize>,
    pub oracle_split: Option<bool>,
    pub congruence: Option<bool>,
    pub excluded: bool,
    pub verdict: String,
    /// Only in principality reports.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub principal: Option<Option<bool>>,
}

impl PrimeReportJson {
    pub fn new(r: &PrimeReport, field: &NumberField) -> Self {
        PrimeReportJson {
            prime: PrimeJson::new(&r.prime, field),
            roots: r.roots,
            oracle_split: r.oracle_split,
            congruence: r.congruence,
            excluded: r.excluded,
            verdict: r.verdict.name().to_string(),
            principal: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanJson {
    pub limit: u64,
    pub rational_primes: usize,
    pub residue_primes: usize,
    pub split_count: usize,
    pub not_split_count: usize,
    /// Split primes (the rational prime, or the residue prime over a
    /// number field).
    pub split: Vec<PrimeJson>,
    pub excluded: Vec<PrimeReportJson>,
    pub skipped: Vec<PrimeJson>,
    pub mismatches: Vec<PrimeReportJson>,
    /// Only with `--timing`, to keep the output reproducible otherwise.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

impl ScanJson {
    pub fn new(s: &ScanReport, field: &NumberField) -> Self {
        let pj = |r: &PrimeReport| PrimeJson::new(&r.prime, field);
        let rj = |r: &PrimeReport| PrimeReportJson::new(r, field);
        ScanJson {
            limit: s.bound,
            rational_primes: s.rational_primes,
            residue_primes: s.reports.len(),
            split_count: s.split().count(),
            not_split_count: s.with(|v| *v == splitlaw_core::criterion::Verdict::NotSplit).count(),
            split: s.split().map(pj).collect(),
            excluded: s.excluded().map(rj).collect(),
            skipped: s.skipped().map(pj).collect(),
            mismatches: s.mismatches().map(rj).collect(),
            elapsed_ms: None,
        }
    }
}

/// Output of `analyze` and `scan`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisJson {
    pub polynomial: String,
    pub field: Option<String>,
    pub discriminant: String,
    pub mode: String,
    pub classes: Vec<ClassJson>,
    pub exclusion: ExclusionJson,
    pub scan: Option<ScanJson>,
}

/// Output of `check`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub polynomial: String,
    pub field: Option<String>,
    pub mode: String,
    pub prime: PrimeJson,
    /// `T_{N(𝔭)+1}` and `T_2` in the residue field.
    pub t_norm_plus_one: Option<String>,
    pub t_2: Option<String>,
    pub roots: Option<usize>,
    pub oracle_split: Option<bool>,
    pub congruence: Option<bool>,
    pub excluded: bool,
    pub verdict: String,
}

/// Output of `sequence`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceJson {
    pub polynomial: String,
    pub field: Option<String>,
    pub modulus: Option<PrimeJson>,
    pub terms: Vec<String>,
}

/// Output of `principal`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipalJson {
    pub field: String,
    pub hcf: String,
    pub discriminant: String,
    pub mode: String,
    pub exclusion: ExclusionJson,
    pub limit: u64,
    pub primes: Vec<PrimeReportJson>,
    pub mismatches: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

impl PrincipalJson {
    pub fn primes(s: &ScanReport, e: &ExclusionValue, field: &NumberField) -> Vec<PrimeReportJson> {
        s.reports
            .iter()
            .map(|r| {
                let mut j = PrimeReportJson::new(r, field);
                j.principal = Some(principal(r, e));
                j
            })
            .collect()
    }
}

/// A base-field element for display.
pub fn elem(x: &NFElem) -> String {
    format_elem(x)
}
