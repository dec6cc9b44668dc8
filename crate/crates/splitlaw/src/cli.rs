use std::fmt::Write as _;
use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use num_traits::One;
use splitlaw_core::arith::{FactorEffort, ZPoly};
use splitlaw_core::ball::MAX_BITS;
use splitlaw_core::criterion::{check_prime, ScanReport, Verdict};
use splitlaw_core::ff::{Fq, FqField};
use splitlaw_core::galois::{exclusion_value, ExclusionValue, Ladder, Mode};
use splitlaw_core::newton::NewtonSeq;
use splitlaw_core::nf::{Irreducibility, NFElem, NFPoly, NumberField, ResiduePrime};
use splitlaw_core::Error;

use crate::parse::{format_coords, format_nf_poly, parse_field, parse_monic, parse_poly, ParseError};
use crate::report::*;
use crate::scan::parallel_scan;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "splitlaw", version, about = "Complete splitting of polynomials modulo primes via Newton power sums")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Class products, discriminant and the exclusion value
    Analyze {
        #[command(flatten)]
        poly: PolyArgs,
        /// Also scan the primes up to this bound
        #[arg(long)]
        limit: Option<u64>,
        #[command(flatten)]
        opts: Opts,
    },
    /// Test one prime
    Check {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        prime: BigUint,
        /// Factor of the field polynomial mod the prime, in y
        #[arg(long)]
        factor: Option<String>,
        #[command(flatten)]
        opts: Opts,
    },
    /// Test every prime up to a bound
    Scan {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        limit: u64,
        #[command(flatten)]
        opts: Opts,
    },
    /// Terms T_0.. of the power-sum sequence
    Sequence {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        count: usize,
        /// Reduce modulo a prime
        #[arg(long = "mod")]
        modulus: Option<BigUint>,
        #[arg(long)]
        factor: Option<String>,
        #[command(flatten)]
        opts: Opts,
    },
    /// Principality of primes of a field, from a polynomial generating its Hilbert class field
    Principal {
        /// Field polynomial in y
        #[arg(long)]
        field: String,
        /// Polynomial in x over the field defining the Hilbert class field
        #[arg(long)]
        hcf: String,
        #[arg(long)]
        limit: u64,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Args, Debug)]
struct PolyArgs {
    /// Monic polynomial in x; coefficients [c0,c1,...] are c0 + c1*y + ...
    #[arg(long)]
    poly: String,
    /// Base field polynomial in y (default: the rationals)
    #[arg(long)]
    field: Option<String>,
}

#[derive(Args, Debug)]
struct Opts {
    /// sym, alt or classes
    #[arg(long, default_value = "classes", value_parser = parse_mode)]
    mode: Mode,
    /// Precision cap for the ball computations
    #[arg(long, default_value_t = MAX_BITS)]
    max_bits: u64,
    /// Factoring budget TRIAL:ROUNDS:ITERATIONS
    #[arg(long, value_parser = parse_effort)]
    effort: Option<FactorEffort>,
    /// Seed for Pollard rho
    #[arg(long)]
    seed: Option<u64>,
    /// Skip factoring the class products
    #[arg(long)]
    no_factor: bool,
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Human-readable output instead of JSON
    #[arg(long)]
    text: bool,
    /// Include wall-clock timings
    #[arg(long)]
    timing: bool,
}

impl Opts {
    fn ladder(&self) -> Ladder {
        Ladder { start: Ladder::default().start.min(self.max_bits), cap: self.max_bits }
    }

    fn effort(&self) -> Option<FactorEffort> {
        if self.no_factor {
            return None;
        }
        let mut e = self.effort.unwrap_or_default();
        if let Some(s) = self.seed {
            e.seed = s;
        }
        Some(e)
    }
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_effort(s: &str) -> Result<FactorEffort, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [t, r, i] = parts.as_slice() else {
        return Err("expected TRIAL:ROUNDS:ITERATIONS".into());
    };
    let num = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("{x:?}: {e}"));
    Ok(FactorEffort {
        trial_bound: num(t)?,
        rho_rounds: num(r)? as u32,
        rho_iterations: num(i)?,
        ..FactorEffort::default()
    })
}

enum Failure {
    Usage(String),
    Compute(Error),
    /// The report was written; the criterion failed somewhere.
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotMonic
            | Error::NotSquarefree
            | Error::DegreeTooSmall(..)
            | Error::DegreeTooLarge(..)
            | Error::NotPrime(_)
            | Error::NotAFactor(_)
            | Error::Invalid(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e),
        }
    }
}

fn parse_failure(what: &str, input: &str, e: ParseError) -> Failure {
    Failure::Usage(format!("{what}: {}", e.render(input)))
}

/// Runs the command line; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "computation failed: {e}");
            EXIT_COMPUTE
        }
        Err(Failure::Mismatch(m)) => {
            let _ = writeln!(err, "MISMATCH: {m}");
            EXIT_MISMATCH
        }
    }
}

struct Input {
    field: Arc<NumberField>,
    f: NFPoly,
}

impl Input {
    fn read(p: &PolyArgs, err: &mut dyn Write) -> Result<Input, Failure> {
        let field = match &p.field {
            Some(g) => {
                let k = parse_field(g).map_err(|e| parse_failure("--field", g, e))?;
                if k.irreducibility() == Irreducibility::Unverified {
                    let _ = writeln!(err, "warning: irreducibility of the field polynomial could not be certified");
                }
                k
            }
            None => NumberField::rationals(),
        };
        Self::with_field(field, &p.poly, "--poly", err)
    }

    fn with_field(field: Arc<NumberField>, text: &str, flag: &str, err: &mut dyn Write) -> Result<Input, Failure> {
        let f = parse_monic(text, 'x', &field).map_err(|e| parse_failure(flag, text, e))?;
        if field.is_rational() {
            let z = ZPoly::new(f.coeffs().iter().map(|c| c.coords()[0].clone()).collect());
            if f.degree() > Some(1)
                && matches!(NumberField::new(z).map(|k| k.irreducibility()), Ok(Irreducibility::Unverified))
            {
                let _ = writeln!(err, "warning: irreducibility of the polynomial could not be certified");
            }
        }
        Ok(Input { field, f })
    }

    fn poly_text(&self) -> String {
        format_nf_poly(&self.f, 'x')
    }

    fn field_text(&self) -> Option<String> {
        (!self.field.is_rational()).then(|| splitlaw_core::nf::format_poly(self.field.polynomial().coeffs(), "y"))
    }

    fn seq(&self) -> Result<NewtonSeq<NFElem>, Failure> {
        Ok(NewtonSeq::new(&self.f)?)
    }

    /// The residue prime given by `p` and an optional factor `h`, or the
    /// unique prime above `p`.
    fn prime(&self, p: &BigUint, factor: Option<&str>) -> Result<ResiduePrime, Failure> {
        if let Some(h) = factor {
            let hp = parse_poly(h, 'y', &NumberField::rationals()).map_err(|e| parse_failure("--factor", h, e))?;
            let coeffs: Vec<BigInt> = hp.coeffs().iter().map(|c| c.coords()[0].clone()).collect();
            return Ok(ResiduePrime::from_factor(&self.field, p, &coeffs)?);
        }
        let mut primes = self.field.residue_primes_above(p)?;
        if primes.len() == 1 {
            return Ok(primes.remove(0));
        }
        let hs: Vec<String> = primes.iter().map(|q| splitlaw_core::nf::format_poly(q.factor(), "y")).collect();
        Err(Failure::Usage(format!(
            "{} primes lie above {p}; choose one with --factor ({})",
            primes.len(),
            hs.join(", ")
        )))
    }
}

fn emit<T: serde::Serialize>(
    out: &mut dyn Write,
    opts: &Opts,
    value: &T,
    text: impl FnOnce() -> String,
) -> Result<(), Failure> {
    let s = if opts.text { text() } else { serde_json::to_string_pretty(value).expect("serializable") + "\n" };
    out.write_all(s.as_bytes()).map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Analyze { poly, limit, opts } => {
            let input = Input::read(&poly, err)?;
            analysis(&input, limit, &opts, out)
        }
        Command::Scan { poly, limit, opts } => {
            let input = Input::read(&poly, err)?;
            analysis(&input, Some(limit), &opts, out)
        }
        Command::Check { poly, prime, factor, opts } => {
            let input = Input::read(&poly, err)?;
            check(&input, &prime, factor.as_deref(), &opts, out)
        }
        Command::Sequence { poly, count, modulus, factor, opts } => {
            let input = Input::read(&poly, err)?;
            sequence(&input, count, modulus.as_ref(), factor.as_deref(), &opts, out)
        }
        Command::Principal { field, hcf, limit, opts } => {
            let k = parse_field(&field).map_err(|e| parse_failure("--field", &field, e))?;
            let input = Input::with_field(k, &hcf, "--hcf", err)?;
            principality(&input, limit, &opts, out)
        }
    }
}

fn exclusion(input: &Input, opts: &Opts) -> Result<ExclusionValue, Failure> {
    Ok(exclusion_value(&input.f, opts.mode, opts.ladder())?)
}

fn scan_with_timing(input: &Input, e: &ExclusionValue, limit: u64) -> Result<(ScanReport, u64), Failure> {
    let start = Instant::now();
    let s = parallel_scan(&input.seq()?, e, limit)?;
    Ok((s, start.elapsed().as_millis() as u64))
}

fn analysis(input: &Input, limit: Option<u64>, opts: &Opts, out: &mut dyn Write) -> Result<(), Failure> {
    let e = exclusion(input, opts)?;
    let effort = opts.effort();
    let scan = match limit {
        Some(n) => Some(scan_with_timing(input, &e, n)?),
        None => None,
    };
    let doc = AnalysisJson {
        polynomial: input.poly_text(),
        field: input.field_text(),
        discriminant: elem(&e.discriminant),
        mode: opts.mode.to_string(),
        classes: e.classes.iter().map(|c| ClassJson::new(c, effort.as_ref())).collect(),
        exclusion: ExclusionJson::new(&e, effort.as_ref()),
        scan: scan.as_ref().map(|(s, ms)| {
            let mut j = ScanJson::new(s, &input.field);
            j.elapsed_ms = opts.timing.then_some(*ms);
            j
        }),
    };
    emit(out, opts, &doc, || analysis_text(&doc))?;
    if let Some((s, _)) = &scan {
        s.verify(&e).map_err(Failure::Mismatch)?;
    }
    Ok(())
}

fn check(input: &Input, p: &BigUint, factor: Option<&str>, opts: &Opts, out: &mut dyn Write) -> Result<(), Failure> {
    let prime = input.prime(p, factor)?;
    let e = exclusion(input, opts)?;
    let seq = input.seq()?;
    let r = check_prime(&seq, &prime, &e);
    let (tn, t2) = if prime.usable() {
        let red = seq.reduce(&prime);
        let n = prime.norm() + BigUint::one();
        (Some(fq_text(red.field(), &red.term_trace(&n))), Some(fq_text(red.field(), &red.term_iter(2))))
    } else {
        (None, None)
    };
    let doc = CheckJson {
        polynomial: input.poly_text(),
        field: input.field_text(),
        mode: opts.mode.to_string(),
        prime: PrimeJson::new(&prime, &input.field),
        t_norm_plus_one: tn,
        t_2: t2,
        roots: r.roots,
        oracle_split: r.oracle_split,
        congruence: r.congruence,
        excluded: r.excluded,
        verdict: r.verdict.name().into(),
    };
    emit(out, opts, &doc, || check_text(&doc))?;
    if r.verdict == Verdict::Mismatch {
        return Err(Failure::Mismatch(format!("criterion violated at {p}")));
    }
    Ok(())
}

fn sequence(
    input: &Input,
    count: usize,
    modulus: Option<&BigUint>,
    factor: Option<&str>,
    opts: &Opts,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let seq = input.seq()?;
    let (terms, modulus) = match modulus {
        None => (seq.terms(count).iter().map(elem).collect(), None),
        Some(p) => {
            let prime = input.prime(p, factor)?;
            if !prime.usable() {
                return Err(Failure::Usage(format!(
                    "the prime above {p} is ramified or divides the field discriminant"
                )));
            }
            let red = seq.reduce(&prime);
            let terms = (0..count as u64).map(|n| fq_text(red.field(), &red.term_iter(n))).collect();
            (terms, Some(PrimeJson::new(&prime, &input.field)))
        }
    };
    let doc = SequenceJson { polynomial: input.poly_text(), field: input.field_text(), modulus, terms };
    emit(out, opts, &doc, || {
        doc.terms.iter().enumerate().fold(String::new(), |mut s, (i, t)| {
            let _ = writeln!(s, "T_{i} = {t}");
            s
        })
    })
}

fn principality(input: &Input, limit: u64, opts: &Opts, out: &mut dyn Write) -> Result<(), Failure> {
    let e = exclusion(input, opts)?;
    let (s, ms) = scan_with_timing(input, &e, limit)?;
    let doc = PrincipalJson {
        field: input.field_text().unwrap_or_else(|| "y".into()),
        hcf: input.poly_text(),
        discriminant: elem(&e.discriminant),
        mode: opts.mode.to_string(),
        exclusion: ExclusionJson::new(&e, opts.effort().as_ref()),
        limit,
        primes: PrincipalJson::primes(&s, &e, &input.field),
        mismatches: s.mismatches().count(),
        elapsed_ms: opts.timing.then_some(ms),
    };
    emit(out, opts, &doc, || principal_text(&doc))?;
    s.verify(&e).map_err(Failure::Mismatch)
}

/// Residue-field element: an integer in `[0, p)` for prime fields.
fn fq_text(field: &FqField, x: &Fq) -> String {
    match field.as_prime_field(x) {
        Some(n) if field.degree() == 1 => n.to_string(),
        _ => format_coords(&x.coords().iter().cloned().map(BigInt::from).collect::<Vec<_>>()),
    }
}

fn prime_text(p: &PrimeJson) -> String {
    match &p.factor {
        Some(h) => format!("({}, {h})", p.p),
        None => p.p.clone(),
    }
}

fn fact_text(sign: i8, factors: &[PrimePower], cofactor: &str) -> String {
    let mut parts: Vec<String> = factors
        .iter()
        .map(|f| if f.exponent == 1 { f.prime.clone() } else { format!("{}^{}", f.prime, f.exponent) })
        .collect();
    if cofactor != "1" {
        parts.push(format!("({cofactor})"));
    }
    let body = if parts.is_empty() { "1".into() } else { parts.join("·") };
    match sign {
        0 => "0".into(),
        -1 => format!("-{body}"),
        _ => body,
    }
}

fn analysis_text(d: &AnalysisJson) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "polynomial    {}", d.polynomial);
    if let Some(k) = &d.field {
        let _ = writeln!(s, "field         {k}");
    }
    let _ = writeln!(s, "discriminant  {}", d.discriminant);
    let _ = writeln!(s, "mode          {}", d.mode);
    for c in &d.classes {
        let _ = write!(s, "class {:<14} {}", c.cycle_type, c.value);
        if let Some(f) = &c.factorization {
            let _ = write!(s, "  = {}", fact_text(f.sign, &f.factors, &f.cofactor));
        }
        let _ = writeln!(s, "{}", if c.is_square { "  (square)" } else { "" });
    }
    let x = &d.exclusion;
    if x.vanishes {
        let _ = writeln!(s, "exclusion     0 (no prime is covered)");
    } else {
        let _ = writeln!(s, "exclusion     norm {} = {}", x.norm, fact_text(x.sign, &x.prime_support, &x.cofactor));
    }
    if let Some(sc) = &d.scan {
        let _ = writeln!(
            s,
            "scan ≤ {}: {} rational primes, {} residue primes, {} split, {} not split",
            sc.limit, sc.rational_primes, sc.residue_primes, sc.split_count, sc.not_split_count
        );
        for r in &sc.excluded {
            let _ = writeln!(s, "  excluded {} ({})", prime_text(&r.prime), r.verdict);
        }
        for p in &sc.skipped {
            let _ = writeln!(s, "  skipped  {}", prime_text(p));
        }
        for r in &sc.mismatches {
            let _ = writeln!(s, "  MISMATCH {}", prime_text(&r.prime));
        }
        if let Some(ms) = sc.elapsed_ms {
            let _ = writeln!(s, "  {ms} ms");
        }
    }
    s
}

fn check_text(d: &CheckJson) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "prime {} of norm {}", prime_text(&d.prime), d.prime.norm);
    if let (Some(a), Some(b)) = (&d.t_norm_plus_one, &d.t_2) {
        let _ = writeln!(s, "T_(N+1) = {a}, T_2 = {b}");
    }
    if let Some(n) = d.roots {
        let _ = writeln!(s, "roots mod p: {n}");
    }
    let _ = writeln!(s, "verdict: {}", d.verdict);
    s
}

fn principal_text(d: &PrincipalJson) -> String {
    let mut s = String::new();
    for p in &d.primes {
        let label = match p.principal {
            Some(Some(true)) => "principal",
            Some(Some(false)) => "not principal",
            _ => "undetermined",
        };
        let _ = writeln!(s, "{:<28} norm {:<10} {:<20} {label}", prime_text(&p.prime), p.prime.norm, p.verdict);
    }
    s
}
