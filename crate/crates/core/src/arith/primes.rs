//! Prime tables built with a segmented sieve of Eratosthenes.

use crate::error::{Error, Result};

const SEGMENT_BYTES: usize = 1 << 18;

/// Upper bound on the memory a sieve run may allocate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveBudget {
    pub max_bytes: u64,
}

impl Default for SieveBudget {
    fn default() -> Self {
        // 1 GiB is enough for a table up to 10^9 (about 5.1e7 primes).
        SieveBudget { max_bytes: 1 << 30 }
    }
}

impl SieveBudget {
    /// Bytes needed to hold every prime up to `limit`, using the
    /// Rosser-Schoenfeld bound pi(x) < 1.25506 x / ln x.
    pub fn bytes_for(limit: u64) -> u64 {
        let count = if limit < 17 {
            6.0
        } else {
            let x = limit as f64;
            (1.25506 * x / x.ln()).ceil() + 1.0
        };
        count as u64 * std::mem::size_of::<u64>() as u64 + SEGMENT_BYTES as u64
    }
}

/// All primes up to `limit`, in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// The `k`-th prime, 1-based (`nth(1) == Some(2)`).
    pub fn nth(&self, k: u64) -> Option<u64> {
        if k == 0 {
            return None;
        }
        self.primes.get(usize::try_from(k - 1).ok()?).copied()
    }

    /// pi(x) for x within the table.
    pub fn count_up_to(&self, x: u64) -> Result<u64> {
        self.ensure_covers(x)?;
        Ok(self.primes.partition_point(|&p| p <= x) as u64)
    }

    /// Primes `p <= x`.
    pub fn up_to(&self, x: u64) -> Result<&[u64]> {
        self.ensure_covers(x)?;
        Ok(&self.primes[..self.primes.partition_point(|&p| p <= x)])
    }

    /// Primes in the half-open interval `(lo, hi]`.
    pub fn between(&self, lo: u64, hi: u64) -> Result<&[u64]> {
        self.ensure_covers(hi)?;
        let a = self.primes.partition_point(|&p| p <= lo);
        let b = self.primes.partition_point(|&p| p <= hi);
        Ok(&self.primes[a..b.max(a)])
    }

    pub fn contains(&self, x: u64) -> bool {
        self.primes.binary_search(&x).is_ok()
    }

    pub fn ensure_covers(&self, x: u64) -> Result<()> {
        if x > self.limit {
            Err(Error::TableTooSmall {
                limit: self.limit,
                needed: x,
            })
        } else {
            Ok(())
        }
    }
}

/// Sieve all primes up to `limit` under the default memory budget.
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    sieve_primes_with(limit, SieveBudget::default())
}

pub fn sieve_primes_with(limit: u64, budget: SieveBudget) -> Result<PrimeTable> {
    let needed = SieveBudget::bytes_for(limit);
    if needed > budget.max_bytes {
        return Err(Error::BudgetExceeded {
            what: "prime table bytes",
            requested: needed,
            limit: budget.max_bytes,
        });
    }
    let mut primes = Vec::new();
    if limit >= 2 {
        primes.push(2);
    }
    if limit < 3 {
        return Ok(PrimeTable { limit, primes });
    }

    let base = small_odd_primes(isqrt(limit));
    // Segment byte i stands for the odd number seg_lo + 2i.
    let mut seg = vec![true; SEGMENT_BYTES];
    let mut seg_lo = 3u64;
    while seg_lo <= limit {
        let span = ((limit - seg_lo) / 2 + 1).min(SEGMENT_BYTES as u64) as usize;
        let seg_hi = seg_lo + 2 * (span as u64 - 1);
        seg[..span].fill(true);
        for &p in &base {
            let p2 = p * p;
            if p2 > seg_hi {
                break;
            }
            let mut start = if p2 >= seg_lo {
                p2
            } else {
                let r = seg_lo.div_ceil(p) * p;
                if r % 2 == 0 {
                    r + p
                } else {
                    r
                }
            };
            while start <= seg_hi {
                seg[((start - seg_lo) / 2) as usize] = false;
                start += 2 * p;
            }
        }
        primes.extend(
            seg[..span]
                .iter()
                .enumerate()
                .filter(|(_, &is_p)| is_p)
                .map(|(i, _)| seg_lo + 2 * i as u64),
        );
        seg_lo = seg_hi + 2;
    }
    Ok(PrimeTable { limit, primes })
}

fn small_odd_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    let mut i = 3;
    while i <= n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += 2 * i;
            }
        }
        i += 2;
    }
    out
}

/// Floor of the square root of `n`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}
