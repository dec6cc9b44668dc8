//! Prime scans spread over a rayon pool.

use rayon::prelude::*;
use splitlaw_core::arith::primes_up_to;
use splitlaw_core::criterion::{check_rational_prime, ScanReport};
use splitlaw_core::galois::ExclusionValue;
use splitlaw_core::newton::NewtonSeq;
use splitlaw_core::nf::NFElem;

/// Environment variable capping the number of scan threads.
pub const THREADS_VAR: &str = "SPLITLAW_THREADS";

fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_VAR).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Every residue prime above every rational prime `≤ bound`. The result is
/// sorted, so it does not depend on the number of threads.
pub fn parallel_scan(seq: &NewtonSeq<NFElem>, e: &ExclusionValue, bound: u64) -> splitlaw_core::Result<ScanReport> {
    let primes = primes_up_to(bound);
    let run = || -> splitlaw_core::Result<ScanReport> {
        let chunks: Vec<_> = primes.par_iter().map(|&p| check_rational_prime(seq, p, e)).collect::<Result<_, _>>()?;
        Ok(ScanReport::new(bound, primes.len(), chunks.into_iter().flatten().collect()))
    };
    match thread_cap() {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool").install(run),
        None => run(),
    }
}
