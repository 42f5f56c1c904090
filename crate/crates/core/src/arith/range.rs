//! Segmented divisor-sum sieve.
//!
//! Each block of consecutive integers starts with `rem[i] = n` and
//! `sig[i] = 1`; every base prime strips its full power from the multiples it
//! hits and multiplies in sigma(p^e). A cofactor left above 1 is a prime
//! larger than sqrt(hi).

use rayon::prelude::*;

use super::primes::{isqrt, sieve_primes};
use crate::error::{Error, Result};

/// Elements sieved together; keeps `rem` and `sig` inside L2.
const BLOCK: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeConfig {
    /// Integers per unit of parallel work.
    pub segment_size: u64,
    /// Worker threads; results never depend on this.
    pub workers: usize,
    /// Largest range `sigma_range` will materialize.
    pub max_len: u64,
}

impl Default for RangeConfig {
    fn default() -> Self {
        RangeConfig {
            segment_size: 1 << 22,
            workers: default_workers(),
            max_len: 1 << 26,
        }
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Base primes for sieving any block below `hi`.
#[derive(Debug, Clone)]
pub struct SigmaSieve {
    hi: u64,
    base: Vec<u64>,
}

impl SigmaSieve {
    pub fn new(hi: u64) -> Result<Self> {
        let table = sieve_primes(isqrt(hi.saturating_sub(1)))?;
        Ok(SigmaSieve {
            hi,
            base: table.primes().to_vec(),
        })
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    /// Writes sigma(n) for n in [lo, hi) into `out` (cleared first).
    pub fn fill(&self, lo: u64, hi: u64, out: &mut Vec<u128>) {
        assert!(lo >= 1 && lo <= hi && hi <= self.hi);
        out.clear();
        out.reserve((hi - lo) as usize);
        let mut rem = vec![0u64; BLOCK];
        let mut sig = vec![0u128; BLOCK];
        let mut a = lo;
        while a < hi {
            let len = (hi - a).min(BLOCK as u64) as usize;
            self.block(a, &mut rem[..len], &mut sig[..len]);
            out.extend_from_slice(&sig[..len]);
            a += len as u64;
        }
    }

    fn block(&self, a: u64, rem: &mut [u64], sig: &mut [u128]) {
        let len = rem.len() as u64;
        let b = a + len;
        for (i, (r, s)) in rem.iter_mut().zip(sig.iter_mut()).enumerate() {
            *r = a + i as u64;
            *s = 1;
        }
        for &p in &self.base {
            if p * p >= b {
                break;
            }
            let first = a.div_ceil(p) * p;
            let mut j = first - a;
            while j < len {
                let idx = j as usize;
                let mut r = rem[idx] / p;
                let mut pk = p as u128;
                let mut term = 1 + pk;
                while r.is_multiple_of(p) {
                    r /= p;
                    pk *= p as u128;
                    term += pk;
                }
                rem[idx] = r;
                sig[idx] *= term;
                j += p;
            }
        }
        for (r, s) in rem.iter().zip(sig.iter_mut()) {
            if *r > 1 {
                *s *= *r as u128 + 1;
            }
        }
    }
}

/// sigma(n) for every n in [lo, hi), default configuration.
pub fn sigma_range(lo: u64, hi: u64) -> Result<Vec<u128>> {
    sigma_range_with(lo, hi, &RangeConfig::default())
}

pub fn sigma_range_with(lo: u64, hi: u64, cfg: &RangeConfig) -> Result<Vec<u128>> {
    check_range(lo, hi)?;
    if hi - lo > cfg.max_len {
        return Err(Error::BudgetExceeded {
            what: "sigma_range length",
            requested: hi - lo,
            limit: cfg.max_len,
        });
    }
    let parts = map_segments(lo, hi, cfg, |_, values| values.to_vec())?;
    Ok(parts.concat())
}

/// Sieves [lo, hi) segment by segment on `cfg.workers` threads and maps each
/// segment through `f(segment_lo, sigmas)`. Results come back in segment order.
pub fn map_segments<R, F>(lo: u64, hi: u64, cfg: &RangeConfig, f: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(u64, &[u128]) -> R + Sync,
{
    check_range(lo, hi)?;
    if cfg.segment_size == 0 || cfg.workers == 0 {
        return Err(Error::InvalidArgument(
            "segment size and worker count must be positive".into(),
        ));
    }
    let sieve = SigmaSieve::new(hi)?;
    let segments: Vec<(u64, u64)> = (0..(hi - lo).div_ceil(cfg.segment_size))
        .map(|i| {
            let a = lo + i * cfg.segment_size;
            (a, (a + cfg.segment_size).min(hi))
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    Ok(pool.install(|| {
        segments
            .par_iter()
            .map_init(Vec::new, |buf, &(a, b)| {
                sieve.fill(a, b, buf);
                f(a, buf)
            })
            .collect()
    }))
}

fn check_range(lo: u64, hi: u64) -> Result<()> {
    if lo == 0 || lo >= hi {
        Err(Error::InvalidArgument(format!(
            "range [{lo}, {hi}) must satisfy 1 <= lo < hi"
        )))
    } else {
        Ok(())
    }
}
