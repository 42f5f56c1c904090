//! Chebyshev theta, Mertens products, primorials N_k and the ratio
//! R_t(N_k) = Psi_t(N_k) / (N_k log log N_k).
//!
//! Products over primes are formed exactly in fixed chunks of
//! [`CHUNK_PRIMES`] consecutive primes, each chunk is enclosed once, and the
//! chunk enclosures are combined in ascending order. Chunk boundaries depend
//! only on prime indices, so results are bit-identical whether chunks are
//! evaluated sequentially, in parallel, or incrementally.

use rayon::prelude::*;
use rug::float::Round;
use rug::{Float, Integer, Rational};

use crate::arith::{factorize, ipow, psi_t_ratio, PrimeTable};
use crate::certificates::CertificateParams;
use crate::error::{Error, Result};
use crate::rigor::{escalate, tail_product_upper, zeta_int, Enclosure, Verdict3, MAX_PRECISION};

pub const CHUNK_PRIMES: usize = 256;
/// N_k is materialized as an integer only up to this index.
pub const MATERIALIZE_LIMIT: u64 = 10_000;
/// Upper end for exhaustive scans (champions, primorial maximality).
pub const SCAN_LIMIT: u64 = 10_000_000;

/// Extra bits carried through chunk conversions.
const GUARD_BITS: u32 = 16;

/// Prime indices known from the literature but far beyond desk-scale sieving.
pub const KNOWN_PRIME_INDICES: &[(u64, u64, &str)] = &[(
    999_999_476_056,
    29_996_208_012_611,
    "verified range of Robin's inequality up to N_k (Morrill-Platt)",
)];

/// num/den enclosed without reducing the fraction.
fn ratio_enclosure(num: &Integer, den: &Integer, prec: u32) -> Enclosure {
    let n_lo = Float::with_val_round(prec, num, Round::Down).0;
    let n_hi = Float::with_val_round(prec, num, Round::Up).0;
    let d_lo = Float::with_val_round(prec, den, Round::Down).0;
    let d_hi = Float::with_val_round(prec, den, Round::Up).0;
    let lo = Float::with_val_round(prec, &n_lo / &d_hi, Round::Down).0;
    let hi = Float::with_val_round(prec, &n_hi / &d_lo, Round::Up).0;
    Enclosure::from_bounds(lo, hi).expect("positive finite ratio")
}

fn chunk_ratio<F>(primes: &[u64], factor: &F) -> (Integer, Integer)
where
    F: Fn(u64) -> (Integer, Integer),
{
    let mut num = Integer::from(1);
    let mut den = Integer::from(1);
    for &p in primes {
        let (a, b) = factor(p);
        num *= a;
        den *= b;
    }
    (num, den)
}

/// Enclosure of sum_p log(num(p)/den(p)) over `primes`.
fn log_product<F>(primes: &[u64], factor: F, prec: u32) -> Enclosure
where
    F: Fn(u64) -> (Integer, Integer) + Sync,
{
    let wp = prec + GUARD_BITS;
    let logs: Vec<Enclosure> = primes
        .par_chunks(CHUNK_PRIMES)
        .map(|chunk| {
            let (num, den) = chunk_ratio(chunk, &factor);
            ratio_enclosure(&num, &den, wp)
                .ln()
                .expect("positive chunk")
        })
        .collect();
    logs.iter()
        .fold(Enclosure::zero(wp), |acc, l| acc.add(l))
        .with_prec(prec)
}

/// Enclosure of prod_p num(p)/den(p) over `primes`.
fn product<F>(primes: &[u64], factor: F, prec: u32) -> Enclosure
where
    F: Fn(u64) -> (Integer, Integer) + Sync,
{
    let wp = prec + GUARD_BITS;
    let parts: Vec<Enclosure> = primes
        .par_chunks(CHUNK_PRIMES)
        .map(|chunk| {
            let (num, den) = chunk_ratio(chunk, &factor);
            ratio_enclosure(&num, &den, wp)
        })
        .collect();
    parts
        .iter()
        .fold(Enclosure::one(wp), |acc, x| acc.mul(x))
        .with_prec(prec)
}

fn log_p(p: u64) -> (Integer, Integer) {
    (Integer::from(p), Integer::from(1))
}

fn mertens_factor(p: u64) -> (Integer, Integer) {
    (Integer::from(p), Integer::from(p - 1))
}

/// 1 + 1/p + ... + 1/p^(t-1) = (p^t - 1) / (p^(t-1) (p - 1)).
fn psi_factor(t: u32) -> impl Fn(u64) -> (Integer, Integer) + Sync {
    move |p| (ipow(p, t) - 1u32, ipow(p, t - 1) * (p - 1))
}

/// (1 - p^-t)^-1 = p^t / (p^t - 1).
fn zeta_factor(t: u32) -> impl Fn(u64) -> (Integer, Integer) + Sync {
    move |p| {
        let pt = ipow(p, t);
        let d = Integer::from(&pt - 1u32);
        (pt, d)
    }
}

/// theta(x) = sum_{p <= x} log p.
pub fn theta(x: u64, table: &PrimeTable, prec: u32) -> Result<Enclosure> {
    Ok(log_product(table.up_to(x)?, log_p, prec))
}

/// prod_{p <= x} p / (p - 1).
pub fn mertens_product(x: u64, table: &PrimeTable, prec: u32) -> Result<Enclosure> {
    Ok(product(table.up_to(x)?, mertens_factor, prec))
}

#[derive(Debug, Clone, PartialEq)]
pub enum RecordSource {
    /// theta and the Mertens product were summed over the prime table.
    Summed,
    /// p_k is a literature value; theta is bracketed by explicit bounds.
    External { note: String },
}

#[derive(Debug, Clone)]
pub struct PrimorialRecord {
    pub k: u64,
    pub p_k: u64,
    /// theta(p_k) = log N_k.
    pub theta: Enclosure,
    /// prod_{p <= p_k} p/(p-1); absent for external records.
    pub mertens: Option<Enclosure>,
    /// N_k itself, for k up to [`MATERIALIZE_LIMIT`].
    pub value: Option<Integer>,
    pub source: RecordSource,
}

/// Record for the k-th primorial.
pub fn primorial(k: u64, table: &PrimeTable, prec: u32) -> Result<PrimorialRecord> {
    if k == 0 {
        return Err(Error::InvalidArgument("primorial index starts at 1".into()));
    }
    if let Some(p_k) = table.nth(k) {
        let primes = &table.primes()[..k as usize];
        let value = (k <= MATERIALIZE_LIMIT)
            .then(|| primes.iter().fold(Integer::from(1), |acc, &p| acc * p));
        return Ok(PrimorialRecord {
            k,
            p_k,
            theta: log_product(primes, log_p, prec),
            mertens: Some(product(primes, mertens_factor, prec)),
            value,
            source: RecordSource::Summed,
        });
    }
    if let Some(&(_, p_k, note)) = KNOWN_PRIME_INDICES.iter().find(|(i, _, _)| *i == k) {
        let params = CertificateParams::default();
        return Ok(PrimorialRecord {
            k,
            p_k,
            theta: params.theta_bracket(p_k, prec)?,
            mertens: None,
            value: None,
            source: RecordSource::External {
                note: format!(
                    "p_k from {note}; theta bracketed by p(1 - {}/log^2 p) < theta(p) < p",
                    params.c_theta
                ),
            },
        });
    }
    Err(Error::OutOfRange(k))
}

/// Records for k = 1..=k_max, built incrementally with the same chunking as
/// [`primorial`], so each entry is bit-identical to a direct call.
pub fn primorial_records(
    k_max: u64,
    table: &PrimeTable,
    prec: u32,
) -> Result<Vec<PrimorialRecord>> {
    if k_max as usize > table.len() {
        return Err(Error::TableTooSmall {
            limit: table.limit(),
            needed: k_max,
        });
    }
    let wp = prec + GUARD_BITS;
    let mut out = Vec::with_capacity(k_max as usize);
    let mut theta_done = Enclosure::zero(wp);
    let mut mertens_done = Enclosure::one(wp);
    let (mut t_num, mut m_num, mut m_den) = (Integer::from(1), Integer::from(1), Integer::from(1));
    let mut value = Integer::from(1);
    for (i, &p) in table.primes()[..k_max as usize].iter().enumerate() {
        t_num *= p;
        m_num *= p;
        m_den *= p - 1;
        if (i as u64) < MATERIALIZE_LIMIT {
            value *= p;
        }
        let one = Integer::from(1);
        let theta_part = ratio_enclosure(&t_num, &one, wp).ln()?;
        let mertens_part = ratio_enclosure(&m_num, &m_den, wp);
        let k = i as u64 + 1;
        out.push(PrimorialRecord {
            k,
            p_k: p,
            theta: theta_done.add(&theta_part).with_prec(prec),
            mertens: Some(mertens_done.mul(&mertens_part).with_prec(prec)),
            value: (k <= MATERIALIZE_LIMIT).then(|| value.clone()),
            source: RecordSource::Summed,
        });
        if (i + 1) % CHUNK_PRIMES == 0 {
            theta_done = theta_done.add(&theta_part);
            mertens_done = mertens_done.mul(&mertens_part);
            t_num = Integer::from(1);
            m_num = Integer::from(1);
            m_den = Integer::from(1);
        }
    }
    Ok(out)
}

/// R_t(N_k) for k = 2..=k_max, built incrementally; entry k - 2 is
/// bit-identical to `r_t_direct(k, t, ..)`.
pub fn r_t_series(k_max: u64, t: u32, table: &PrimeTable, prec: u32) -> Result<Vec<Enclosure>> {
    check_t(t)?;
    first_k_primes(k_max, table)?;
    let wp = prec + GUARD_BITS;
    let psi = psi_factor(t);
    let mut psi_done = Enclosure::zero(wp);
    let mut theta_done = Enclosure::zero(wp);
    let (mut a_num, mut a_den, mut t_num) = (Integer::from(1), Integer::from(1), Integer::from(1));
    let one = Integer::from(1);
    let mut out = Vec::with_capacity(k_max as usize - 1);
    for (i, &p) in table.primes()[..k_max as usize].iter().enumerate() {
        let (n, d) = psi(p);
        a_num *= n;
        a_den *= d;
        t_num *= p;
        let psi_part = ratio_enclosure(&a_num, &a_den, wp).ln()?;
        let theta_part = ratio_enclosure(&t_num, &one, wp).ln()?;
        if i >= 1 {
            let log_psi = psi_done.add(&psi_part);
            let loglog = theta_done.add(&theta_part).ln()?;
            out.push(log_psi.exp().div(&loglog)?.with_prec(prec));
        }
        if (i + 1) % CHUNK_PRIMES == 0 {
            psi_done = psi_done.add(&psi_part);
            theta_done = theta_done.add(&theta_part);
            a_num = Integer::from(1);
            a_den = Integer::from(1);
            t_num = Integer::from(1);
        }
    }
    Ok(out)
}

fn first_k_primes(k: u64, table: &PrimeTable) -> Result<&[u64]> {
    if k < 2 {
        return Err(Error::Domain(
            "R_t(N_k) needs k >= 2: log log N_1 = log log 2 < 0".into(),
        ));
    }
    if k as usize > table.len() {
        return Err(Error::TableTooSmall {
            limit: table.limit(),
            needed: k,
        });
    }
    Ok(&table.primes()[..k as usize])
}

fn check_t(t: u32) -> Result<()> {
    if t < 2 {
        Err(Error::InvalidArgument(format!(
            "t must be at least 2, got {t}"
        )))
    } else {
        Ok(())
    }
}

/// R_t(N_k) from the definition, in log space:
/// exp(sum_{p <= p_k} log(1 + 1/p + ... + 1/p^(t-1))) / log theta(p_k).
pub fn r_t_direct(k: u64, t: u32, table: &PrimeTable, prec: u32) -> Result<Enclosure> {
    check_t(t)?;
    let primes = first_k_primes(k, table)?;
    let wp = prec + GUARD_BITS;
    let log_psi = log_product(primes, psi_factor(t), wp);
    let loglog = log_product(primes, log_p, wp).ln()?;
    Ok(log_psi.exp().div(&loglog)?.with_prec(prec))
}

/// R_t(N_k) through the zeta-product identity
/// prod_{p > p_k} (1 - p^-t)^-1 / (zeta(t) log theta(p_k)) * prod_{p <= p_k} p/(p-1).
///
/// The infinite tail is enclosed between the finite product over
/// (p_k, tail_cutoff] and that product times the explicit tail bound at
/// `tail_cutoff`.
pub fn r_t_formula(
    k: u64,
    t: u32,
    table: &PrimeTable,
    tail_cutoff: u64,
    prec: u32,
) -> Result<Enclosure> {
    check_t(t)?;
    let primes = first_k_primes(k, table)?;
    let p_k = *primes.last().expect("k >= 2");
    if tail_cutoff < p_k {
        return Err(Error::InvalidArgument(format!(
            "tail cutoff {tail_cutoff} is below p_k = {p_k}"
        )));
    }
    let wp = prec + GUARD_BITS;
    let finite_tail = log_product(table.between(p_k, tail_cutoff)?, zeta_factor(t), wp).exp();
    let bound = tail_product_upper(t, &Enclosure::from_u64(tail_cutoff, wp))?;
    let tail = finite_tail.hull(&finite_tail.mul(&bound));
    let mertens = product(primes, mertens_factor, wp);
    let loglog = log_product(primes, log_p, wp).ln()?;
    let zeta = zeta_int(t, wp)?;
    Ok(tail.mul(&mertens).div(&zeta.mul(&loglog))?.with_prec(prec))
}

/// e^gamma / zeta(t), the limit of R_t(N_k) as k grows.
pub fn r_t_limit(t: u32, prec: u32) -> Result<Enclosure> {
    crate::rigor::exp_gamma(prec).div(&zeta_int(t, prec)?)
}

/// Smallest-prime-factor table for 0..=limit.
pub(crate) fn spf_table(limit: u64) -> Vec<u32> {
    let n = limit as usize;
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            if i * i <= n {
                let mut j = i * i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
    }
    spf
}

/// Distinct primes of `n` from an spf table.
pub(crate) fn distinct_primes(mut n: u64, spf: &[u32], out: &mut Vec<u64>) {
    out.clear();
    while n > 1 {
        let p = u64::from(spf[n as usize]);
        out.push(p);
        while n.is_multiple_of(p) {
            n /= p;
        }
    }
}

fn psi_ratio_f64(primes: &[u64], t: u32) -> f64 {
    primes
        .iter()
        .map(|&p| {
            let x = 1.0 / p as f64;
            (1.0 - x.powi(t as i32)) / (1.0 - x)
        })
        .product()
}

fn psi_ratio_exact(primes: &[u64], t: u32) -> Rational {
    let f = psi_factor(t);
    primes.iter().fold(Rational::from(1), |acc, &p| {
        let (a, b) = f(p);
        acc * Rational::from((a, b))
    })
}

fn check_scan_limit(limit: u64) -> Result<()> {
    if limit > SCAN_LIMIT {
        Err(Error::BudgetExceeded {
            what: "exhaustive scan limit",
            requested: limit,
            limit: SCAN_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// All n <= limit at which Psi_t(n)/n strictly exceeds its value at every
/// smaller positive integer. Ties against the running maximum are resolved
/// exactly.
pub fn champion_scan(limit: u64, t: u32) -> Result<Vec<u64>> {
    check_t(t)?;
    check_scan_limit(limit)?;
    if limit == 0 {
        return Ok(Vec::new());
    }
    let spf = spf_table(limit);
    let mut champions = vec![1u64];
    let mut best_f = 1.0f64;
    let mut best_exact = Rational::from(1);
    let mut primes = Vec::new();
    for n in 2..=limit {
        distinct_primes(n, &spf, &mut primes);
        let v = psi_ratio_f64(&primes, t);
        if v < best_f * (1.0 - 1e-12) {
            continue;
        }
        let exact = psi_ratio_exact(&primes, t);
        if exact > best_exact {
            best_f = exact.to_f64();
            best_exact = exact;
            champions.push(n);
        }
    }
    Ok(champions)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaximalityOutcome {
    pub k: u64,
    pub t: u32,
    /// The scanned range [N_k, N_{k+1}).
    pub range: (u64, u64),
    /// R_t(N_k).
    pub at_primorial: Enclosure,
    /// n != N_k with R_t(n) certified greater than R_t(N_k).
    pub exceeding: Vec<u64>,
    /// n != N_k whose comparison with R_t(N_k) stayed undecided at the
    /// precision cap (possible ties).
    pub ties: Vec<u64>,
    /// Largest R_t(n) over n != N_k, as a float estimate.
    pub runner_up: Option<(u64, f64)>,
}

impl MaximalityOutcome {
    /// Maximum attained at N_k (ties reported separately).
    pub fn holds(&self) -> bool {
        self.exceeding.is_empty()
    }
}

/// Exhaustive check that R_t(n) <= R_t(N_k) for all n in [N_k, N_{k+1}).
pub fn lemma202_check(k: u64, t: u32, prec: u32) -> Result<MaximalityOutcome> {
    check_t(t)?;
    let table = crate::arith::sieve_primes(100)?;
    let primes = first_k_primes(k, &table)?;
    let n_k: u64 = primes.iter().product();
    let n_next = n_k * table.nth(k + 1).expect("table holds 25 primes");
    check_scan_limit(n_next)?;

    let r_at = |n: u64, prec: u32| -> Result<Enclosure> {
        let ratio = psi_t_ratio(&factorize(n), t)?;
        let loglog = Enclosure::from_u64(n, prec).ln()?.ln()?;
        Enclosure::from_rational(&ratio, prec).div(&loglog)
    };
    let at_primorial = r_at(n_k, prec)?;
    let threshold = at_primorial.hi_f64();

    let spf = spf_table(n_next);
    let mut buf = Vec::new();
    let mut candidates = Vec::new();
    let mut runner_up: Option<(u64, f64)> = None;
    for n in n_k + 1..n_next {
        distinct_primes(n, &spf, &mut buf);
        let r = psi_ratio_f64(&buf, t) / (n as f64).ln().ln();
        if runner_up.is_none_or(|(_, best)| r > best) {
            runner_up = Some((n, r));
        }
        if r >= threshold * (1.0 - 1e-9) {
            candidates.push(n);
        }
    }
    let mut exceeding = Vec::new();
    let mut ties = Vec::new();
    for n in candidates {
        let (v, _, _) = escalate(prec, MAX_PRECISION, |p| {
            Ok((r_at(n_k, p)?.lt(&r_at(n, p)?), ()))
        })?;
        match v {
            Verdict3::True => exceeding.push(n),
            Verdict3::False => {}
            Verdict3::Undecided { .. } => ties.push(n),
        }
    }
    Ok(MaximalityOutcome {
        k,
        t,
        range: (n_k, n_next),
        at_primorial,
        exceeding,
        ties,
        runner_up,
    })
}
