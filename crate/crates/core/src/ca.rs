//! Colossally abundant numbers in log space.
//!
//! The exponent of p in the CA number for parameter eps is the number of
//! k >= 1 with F(p, k) > eps, where
//! F(p, k) = log(1 + 1/(p + p^2 + ... + p^k)) / log p.
//! Walking the critical values F(p, k) in decreasing order multiplies in one
//! prime at a time and visits every CA number.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use rug::float::Round;
use rug::{Float, Integer, Rational};

use crate::arith::{ipow, sieve_primes, PrimeTable};
use crate::error::{Error, Result};
use crate::rigor::{escalate, euler_gamma, Enclosure, Verdict3, DEFAULT_PRECISION, MAX_PRECISION};
use crate::verify::Status;

/// Largest log n `ca_sequence` will reach.
pub const MAX_LOG_N: f64 = 1e6;

/// CA numbers are materialized as integers while below 2^this.
const MATERIALIZE_BITS: f64 = 256.0;

/// p + p^2 + ... + p^k.
fn geometric(p: u64, k: u32) -> Integer {
    (ipow(p, k + 1) - Integer::from(p)) / Integer::from(p - 1)
}

/// Enclosure of F(p, k).
pub fn critical_epsilon(p: u64, k: u32, prec: u32) -> Result<Enclosure> {
    if k == 0 || p < 2 {
        return Err(Error::InvalidArgument(format!(
            "F(p, k) needs p >= 2, k >= 1 (got {p}, {k})"
        )));
    }
    let s = Rational::from((Integer::from(1), geometric(p, k)));
    Enclosure::from_rational(&s, prec)
        .ln_1p()?
        .div(&Enclosure::from_u64(p, prec).ln()?)
}

fn critical_f64(p: u64, k: u32) -> f64 {
    let pf = p as f64;
    let s = pf * (pf.powi(k as i32) - 1.0) / (pf - 1.0);
    (1.0 / s).ln_1p() / pf.ln()
}

/// log(sigma(p^k) / p^k) - log(sigma(p^(k-1)) / p^(k-1)) = log(1 + (p-1)/(p^(k+1) - p)).
fn sigma_ratio_step(p: u64, k: u32, prec: u32) -> Result<Enclosure> {
    let num = Integer::from(p - 1);
    let den = ipow(p, k + 1) - Integer::from(p);
    Enclosure::from_rational(&Rational::from((num, den)), prec).ln_1p()
}

/// log(sigma(p^a) / p^a).
fn log_sigma_ratio_pp(p: u64, a: u32, prec: u32) -> Result<Enclosure> {
    let num = ipow(p, a + 1) - Integer::from(1);
    let den = ipow(p, a) * Integer::from(p - 1);
    Enclosure::from_rational(&Rational::from((num, den)), prec).ln()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CAExponentVector {
    pub epsilon: Rational,
    /// (p, a_p) with a_p >= 1, primes increasing.
    pub exponents: Vec<(u64, u32)>,
    pub log_n: Enclosure,
    pub log_sigma_ratio: Enclosure,
}

impl CAExponentVector {
    pub fn from_exponents(
        epsilon: Rational,
        exponents: Vec<(u64, u32)>,
        prec: u32,
    ) -> Result<Self> {
        let mut log_n = Enclosure::zero(prec);
        let mut lsr = Enclosure::zero(prec);
        for &(p, a) in &exponents {
            log_n = log_n.add(&Enclosure::from_u64(p, prec).ln()?.mul_u64(u64::from(a)));
            lsr = lsr.add(&log_sigma_ratio_pp(p, a, prec)?);
        }
        Ok(CAExponentVector {
            epsilon,
            exponents,
            log_n,
            log_sigma_ratio: lsr,
        })
    }

    /// The integer itself, if it has at most `max_bits` bits.
    pub fn value(&self, max_bits: u32) -> Option<Integer> {
        if self.log_n.hi_f64() / std::f64::consts::LN_2 > f64::from(max_bits) {
            return None;
        }
        Some(
            self.exponents
                .iter()
                .fold(Integer::from(1), |acc, &(p, a)| acc * ipow(p, a)),
        )
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.exponents
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, a)| a)
    }
}

/// a_p(eps) = #{k >= 1 : F(p, k) > eps}, for all primes in `table`.
///
/// When the formula gives n = 1 (eps >= F(2, 1)) the result is n = 2, since
/// the defining inequality only ranges over k >= 2.
pub fn ca_exponents(epsilon: &Rational, table: &PrimeTable) -> Result<CAExponentVector> {
    if *epsilon <= 0 {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let mut exponents = Vec::new();
    let mut last_prime_used = false;
    for &p in table.primes() {
        let mut a = 0u32;
        loop {
            let (v, _, _) = escalate(DEFAULT_PRECISION, MAX_PRECISION, |prec| {
                let f = critical_epsilon(p, a + 1, prec)?;
                Ok((Enclosure::from_rational(epsilon, prec).lt(&f), ()))
            })?;
            match v {
                Verdict3::True => a += 1,
                Verdict3::False => break,
                Verdict3::Undecided { .. } => {
                    return Err(Error::CriticalEpsilon(format!(
                        "epsilon = {epsilon} is the critical value F({p}, {})",
                        a + 1
                    )))
                }
            }
        }
        if a == 0 {
            last_prime_used = false;
            break;
        }
        last_prime_used = true;
        exponents.push((p, a));
    }
    if last_prime_used {
        return Err(Error::TableTooSmall {
            limit: table.limit(),
            needed: table.limit() + 1,
        });
    }
    if exponents.is_empty() {
        exponents.push((2, 1));
    }
    CAExponentVector::from_exponents(epsilon.clone(), exponents, DEFAULT_PRECISION)
}

/// One step of the CA sequence: the previous CA number times `prime`.
#[derive(Debug, Clone, PartialEq)]
pub struct CaRecord {
    /// Position in the sequence; index 0 is n = 2.
    pub index: usize,
    pub prime: u64,
    /// New exponent of `prime`.
    pub exponent: u32,
    /// The number is CA for eps in (next_critical, critical).
    pub critical: Enclosure,
    pub next_critical: Enclosure,
    pub log_n: Enclosure,
    pub log_sigma_ratio: Enclosure,
    pub distinct_primes: usize,
    /// The critical value could not be separated from a neighbouring one.
    pub tie: bool,
    pub value: Option<Integer>,
}

impl CaRecord {
    /// A rational inside the open eps-interval of this record.
    pub fn epsilon(&self) -> Rational {
        let lo = self.next_critical.hi();
        let hi = self.critical.lo();
        let mid = Float::with_val_round(lo.prec() + 1, lo + hi, Round::Nearest).0 / 2u32;
        mid.to_rational().expect("finite")
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    key: f64,
    p: u64,
    k: u32,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Candidate {}
impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key
            .total_cmp(&other.key)
            .then_with(|| other.p.cmp(&self.p))
    }
}

/// CA numbers with log n <= `max_log_n`, in increasing order.
pub fn ca_sequence(max_log_n: f64, prec: u32) -> Result<Vec<CaRecord>> {
    if max_log_n.is_nan() || max_log_n <= 0.0 || max_log_n > MAX_LOG_N {
        return Err(Error::BudgetExceeded {
            what: "ca_sequence max_log_n",
            requested: max_log_n.max(0.0).ceil() as u64,
            limit: MAX_LOG_N as u64,
        });
    }
    // theta(x) > x/1.2 for x > 1000, so primes up to 1.2 max + 1000 suffice.
    let table = sieve_primes((max_log_n * 1.2) as u64 + 1000)?;
    let primes = table.primes();
    let mut next_new = 0usize;
    let mut heap = BinaryHeap::new();
    let push_new = |heap: &mut BinaryHeap<Candidate>, next_new: &mut usize| -> Result<()> {
        let p = *primes.get(*next_new).ok_or(Error::TableTooSmall {
            limit: table.limit(),
            needed: table.limit() + 1,
        })?;
        heap.push(Candidate {
            key: critical_f64(p, 1),
            p,
            k: 1,
        });
        *next_new += 1;
        Ok(())
    };
    push_new(&mut heap, &mut next_new)?;

    let mut records: Vec<CaRecord> = Vec::new();
    let mut log_n = Enclosure::zero(prec);
    let mut lsr = Enclosure::zero(prec);
    let mut value = Some(Integer::from(1));
    let mut pending_tie = false;
    let mut current = heap.pop().expect("non-empty");
    let mut current_f = critical_epsilon(current.p, current.k, prec)?;
    loop {
        if current.k == 1 {
            push_new(&mut heap, &mut next_new)?;
        }
        heap.push(Candidate {
            key: critical_f64(current.p, current.k + 1),
            p: current.p,
            k: current.k + 1,
        });
        let next = heap.pop().expect("non-empty");
        let next_f = critical_epsilon(next.p, next.k, prec)?;
        let (order, _, _) = escalate(prec, MAX_PRECISION.max(prec), |wp| {
            let a = critical_epsilon(current.p, current.k, wp)?;
            let b = critical_epsilon(next.p, next.k, wp)?;
            Ok((b.lt(&a), ()))
        })?;
        let tie = match order {
            Verdict3::True => false,
            Verdict3::Undecided { .. } => true,
            Verdict3::False => {
                return Err(Error::Domain(format!(
                    "critical values out of order at F({}, {}) and F({}, {})",
                    current.p, current.k, next.p, next.k
                )))
            }
        };

        log_n = log_n.add(&Enclosure::from_u64(current.p, prec).ln()?);
        if log_n.lo_f64() > max_log_n {
            break;
        }
        lsr = lsr.add(&sigma_ratio_step(current.p, current.k, prec)?);
        value = value
            .filter(|_| log_n.hi_f64() / std::f64::consts::LN_2 <= MATERIALIZE_BITS)
            .map(|v| v * current.p);
        let distinct =
            records.last().map_or(0, |r| r.distinct_primes) + usize::from(current.k == 1);
        records.push(CaRecord {
            index: records.len(),
            prime: current.p,
            exponent: current.k,
            critical: current_f.clone(),
            next_critical: next_f.clone(),
            log_n: log_n.clone(),
            log_sigma_ratio: lsr.clone(),
            distinct_primes: distinct,
            tie: tie || pending_tie,
            value: value.clone(),
        });
        pending_tie = tie;
        current = next;
        current_f = next_f;
    }
    Ok(records)
}

/// Exponent vector of record `index`, rebuilt from the sequence prefix.
pub fn exponents_at(records: &[CaRecord], index: usize) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    for r in &records[..=index] {
        match out.iter_mut().find(|(p, _)| *p == r.prime) {
            Some(e) => e.1 = r.exponent,
            None => out.push((r.prime, r.exponent)),
        }
    }
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaVerdict {
    pub status: Status,
    /// gamma + log log log n - log(sigma(n)/n); None when inapplicable.
    pub margin: Option<Enclosure>,
}

fn robin_from_logs(log_n: &Enclosure, lsr: &Enclosure) -> Result<CaVerdict> {
    let prec = log_n.prec();
    if log_n.hi() <= &1 {
        return Ok(CaVerdict {
            status: Status::Inapplicable,
            margin: None,
        });
    }
    if log_n.lo() <= &1 {
        return Ok(CaVerdict {
            status: Status::Undecided,
            margin: None,
        });
    }
    // sigma(n)/n < e^gamma log log n  <=>  log(sigma(n)/n) < gamma + log(log(log n))
    let rhs = euler_gamma(prec).add(&log_n.ln()?.ln()?);
    let status = match lsr.lt(&rhs) {
        Verdict3::True => Status::Holds,
        Verdict3::False => Status::Fails,
        Verdict3::Undecided { .. } => Status::Undecided,
    };
    Ok(CaVerdict {
        status,
        margin: Some(rhs.sub(lsr)),
    })
}

/// Robin's inequality on a CA number, escalating precision as needed.
pub fn robin_check_ca(v: &CAExponentVector) -> Result<CaVerdict> {
    let (_, verdict, _) = escalate(v.log_n.prec(), MAX_PRECISION, |prec| {
        let w = if prec == v.log_n.prec() {
            v.clone()
        } else {
            CAExponentVector::from_exponents(v.epsilon.clone(), v.exponents.clone(), prec)?
        };
        let verdict = robin_from_logs(&w.log_n, &w.log_sigma_ratio)?;
        let v3 = match verdict.status {
            Status::Undecided => Verdict3::Undecided {
                width: w.log_sigma_ratio.width_f64(),
            },
            _ => Verdict3::True,
        };
        Ok((v3, verdict))
    })?;
    Ok(verdict)
}

/// Robin's inequality on one record at the record's precision.
pub fn robin_check_record(r: &CaRecord) -> Result<CaVerdict> {
    robin_from_logs(&r.log_n, &r.log_sigma_ratio)
}

/// Robin checks over a whole sequence, in sequence order.
pub fn robin_check_records(records: &[CaRecord]) -> Result<Vec<CaVerdict>> {
    records.par_iter().map(robin_check_record).collect()
}

/// Generates the sequence and checks every record, regenerating at higher
/// precision while any record is undecided.
pub fn ca_scan(max_log_n: f64, prec: u32) -> Result<(Vec<CaRecord>, Vec<CaVerdict>)> {
    let (_, out, _) = escalate(prec, MAX_PRECISION, |wp| {
        let records = ca_sequence(max_log_n, wp)?;
        let verdicts = robin_check_records(&records)?;
        let undecided = verdicts
            .iter()
            .zip(&records)
            .filter(|(v, _)| v.status == Status::Undecided)
            .map(|(_, r)| r.log_sigma_ratio.width_f64())
            .fold(None, |acc: Option<f64>, w| {
                Some(acc.map_or(w, |a| a.max(w)))
            });
        let v3 = undecided.map_or(Verdict3::True, |width| Verdict3::Undecided { width });
        Ok((v3, (records, verdicts)))
    })?;
    Ok(out)
}

pub const INTERVAL_RULE: &str =
    "if M1 < M2 are consecutive CA numbers satisfying Robin's inequality, it holds for every n with M1 <= n <= M2 (Robin's interval rule)";

#[derive(Debug, Clone, PartialEq)]
pub struct Deduction {
    pub from_index: usize,
    pub to_index: usize,
    pub from_log_n: Enclosure,
    pub to_log_n: Enclosure,
    pub from_n: Option<Integer>,
    pub to_n: Option<Integer>,
    pub rule: &'static str,
}

/// Applies the interval rule to consecutive records.
pub fn robin_interval_deduction(
    a: &CaRecord,
    va: &CaVerdict,
    b: &CaRecord,
    vb: &CaVerdict,
) -> Result<Deduction> {
    if b.index != a.index + 1 {
        return Err(Error::Refused(format!(
            "records {} and {} are not consecutive",
            a.index, b.index
        )));
    }
    for (r, v) in [(a, va), (b, vb)] {
        if v.status != Status::Holds {
            return Err(Error::Refused(format!(
                "record {} (log n ~ {:.6}) is {}, not HOLDS",
                r.index,
                r.log_n.mid_f64(),
                v.status
            )));
        }
    }
    Ok(Deduction {
        from_index: a.index,
        to_index: b.index,
        from_log_n: a.log_n.clone(),
        to_log_n: b.log_n.clone(),
        from_n: a.value.clone(),
        to_n: b.value.clone(),
        rule: INTERVAL_RULE,
    })
}

/// Chained deductions from the first CA number above 5040 to the last record.
#[derive(Debug, Clone, PartialEq)]
pub struct DeductionChain {
    pub first: Option<Deduction>,
    pub last: Option<Deduction>,
    pub links: usize,
    /// Robin's inequality is certified on [from_n, exp(to_log_n)].
    pub from_n: Option<Integer>,
    pub to_log_n: Option<Enclosure>,
}

pub fn robin_deduction_chain(
    records: &[CaRecord],
    verdicts: &[CaVerdict],
) -> Result<DeductionChain> {
    let start = records
        .iter()
        .position(|r| r.value.as_ref().is_some_and(|v| *v > 5040))
        .ok_or_else(|| Error::Refused("no CA record above 5040".into()))?;
    let mut chain = DeductionChain {
        first: None,
        last: None,
        links: 0,
        from_n: records[start].value.clone(),
        to_log_n: None,
    };
    for i in start..records.len().saturating_sub(1) {
        let d =
            robin_interval_deduction(&records[i], &verdicts[i], &records[i + 1], &verdicts[i + 1])?;
        chain.links += 1;
        chain.to_log_n = Some(d.to_log_n.clone());
        if chain.first.is_none() {
            chain.first = Some(d.clone());
        }
        chain.last = Some(d);
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factorize, sigma};
    use crate::verify::{check_one, InequalitySpec, SpecId};
    use rand::{Rng, SeedableRng};

    fn eps(s: &str) -> Rational {
        crate::rigor::parse_decimal(s).unwrap()
    }

    /// (log sigma(n), log n) for n in [2, limit].
    fn logs(limit: u64) -> Vec<(f64, f64)> {
        crate::arith::sigma_range(2, limit + 1)
            .unwrap()
            .iter()
            .zip(2u64..)
            .map(|(&s, n)| ((s as f64).ln(), (n as f64).ln()))
            .collect()
    }

    /// argmax of sigma(n)/n^(1+eps) over the table, smallest n on ties.
    fn brute_ca(table: &[(f64, f64)], e: f64) -> u64 {
        let mut best = (f64::NEG_INFINITY, 0u64);
        for (i, &(ls, ln)) in table.iter().enumerate() {
            let v = ls - (1.0 + e) * ln;
            if v > best.0 {
                best = (v, i as u64 + 2);
            }
        }
        best.1
    }

    #[test]
    fn exponents_examples() {
        let table = sieve_primes(1000).unwrap();
        let v = ca_exponents(&eps("0.1"), &table).unwrap();
        assert_eq!(v.exponents, vec![(2, 2), (3, 1), (5, 1)]);
        assert_eq!(v.value(64), Some(Integer::from(60)));
        for e in ["1", "2.5", "0.7"] {
            let v = ca_exponents(&eps(e), &table).unwrap();
            assert_eq!(v.exponents, vec![(2, 1)]);
        }
        assert!(ca_exponents(&Rational::new(), &table).is_err());
        assert!(matches!(
            ca_exponents(&eps("1e-6"), &sieve_primes(100).unwrap()),
            Err(Error::TableTooSmall { .. })
        ));
    }

    #[test]
    fn exponents_match_brute_force() {
        let table = sieve_primes(1000).unwrap();
        let brute = logs(100_000);
        for e in ["0.5", "0.3", "0.2", "0.1", "0.09", "0.06", "0.04", "0.03"] {
            let v = ca_exponents(&eps(e), &table).unwrap();
            let n = v.value(64).unwrap();
            assert_eq!(n, brute_ca(&brute, e.parse().unwrap()), "eps = {e}");
            let lsr = Rational::from((sigma(&factorize(n.to_u64().unwrap())), n.clone()));
            assert!(v
                .log_sigma_ratio
                .contains(&Enclosure::from_rational(&lsr, 128).ln().unwrap()));
        }
    }

    #[test]
    fn critical_value_is_reported() {
        let table = sieve_primes(1000).unwrap();
        // F(2, 1) = log(3/2)/log 2 is irrational, so exact ties need a
        // rational critical value; F(p, k) never is one. The nearest float
        // still resolves.
        let f = critical_epsilon(2, 1, 256).unwrap();
        let near = f.lo().to_rational().unwrap();
        assert!(ca_exponents(&near, &table).is_ok());
    }

    #[test]
    fn sequence_start() {
        let recs = ca_sequence(50.0, 128).unwrap();
        let first: Vec<u64> = recs
            .iter()
            .take(8)
            .map(|r| r.value.as_ref().unwrap().to_u64().unwrap())
            .collect();
        assert_eq!(first, vec![2, 6, 12, 60, 120, 360, 2520, 5040]);
        assert!(recs.iter().all(|r| !r.tie));
    }

    #[test]
    fn sequence_matches_brute_force_grid() {
        let recs = ca_sequence(12.0, 128).unwrap();
        let values: Vec<u64> = recs
            .iter()
            .filter_map(|r| r.value.as_ref().and_then(|v| v.to_u64()))
            .filter(|&v| v <= 100_000)
            .collect();
        let brute = logs(100_000);
        let mut grid: Vec<u64> = (1..400)
            .map(|i| brute_ca(&brute, 0.6 * 0.985f64.powi(i)))
            .filter(|&n| n <= 55_440)
            .collect();
        grid.dedup();
        for n in &grid {
            assert!(values.contains(n), "{n} missing");
        }
        // Each record is also the maximizer at its own eps.
        for r in recs
            .iter()
            .filter(|r| r.value.as_ref().is_some_and(|v| *v <= 100_000))
        {
            let n = r.value.as_ref().unwrap().to_u64().unwrap();
            assert_eq!(brute_ca(&brute, r.epsilon().to_f64()), n);
        }
    }

    #[test]
    fn sequence_invariants() {
        let recs = ca_sequence(2000.0, 128).unwrap();
        for w in recs.windows(2) {
            assert_eq!(w[0].log_n.lt(&w[1].log_n), Verdict3::True);
            assert_eq!(w[1].next_critical.lt(&w[1].critical), Verdict3::True);
            assert_eq!(w[0].next_critical, w[1].critical);
        }
        // Exponents non-increasing in p, and each step changes one prime by one.
        for i in [10, 100, recs.len() - 1] {
            let ex = exponents_at(&recs, i);
            assert!(ex.windows(2).all(|w| w[0].1 >= w[1].1));
            let v = CAExponentVector::from_exponents(recs[i].epsilon(), ex.clone(), 128).unwrap();
            assert!(v.log_n.intersects(&recs[i].log_n));
            assert!(v.log_sigma_ratio.intersects(&recs[i].log_sigma_ratio));
            let table = sieve_primes(5000).unwrap();
            assert_eq!(
                ca_exponents(&recs[i].epsilon(), &table).unwrap().exponents,
                ex
            );
        }
    }

    #[test]
    fn materialized_values_agree() {
        let recs = ca_sequence(16.2, 128).unwrap();
        for r in &recs {
            let n = r.value.as_ref().unwrap().to_u64().unwrap();
            let exact = Rational::from((sigma(&factorize(n)), Integer::from(n)));
            let l = Enclosure::from_rational(&exact, 128).ln().unwrap();
            assert!(r.log_sigma_ratio.intersects(&l), "n = {n}");
            assert!(r
                .log_n
                .intersects(&Enclosure::from_u64(n, 128).ln().unwrap()));
        }
    }

    #[test]
    fn local_maximality() {
        let recs = ca_sequence(500.0, 128).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let idx = recs.len() - 1;
        let ex = exponents_at(&recs, idx);
        let e = recs[idx].epsilon().to_f64();
        let value = |ex: &[(u64, u32)]| -> f64 {
            ex.iter()
                .map(|&(p, a)| {
                    let pf = p as f64;
                    ((pf.powi(a as i32 + 1) - 1.0) / (pf - 1.0)).ln()
                        - (1.0 + e) * f64::from(a) * pf.ln()
                })
                .sum()
        };
        let base = value(&ex);
        let mut extended = ex.clone();
        extended.push((1_000_003, 0));
        for _ in 0..1000 {
            let mut pert = extended.clone();
            for _ in 0..rng.gen_range(1..4) {
                let i = rng.gen_range(0..pert.len());
                if rng.gen_bool(0.5) {
                    pert[i].1 += 1;
                } else if pert[i].1 > 0 {
                    pert[i].1 -= 1;
                }
            }
            assert!(value(&pert) <= base + 1e-12);
        }
    }

    #[test]
    fn robin_on_ca() {
        let (recs, verdicts) = ca_scan(5000.0, 128).unwrap();
        let at = |n: u64| {
            recs.iter()
                .position(|r| r.value == Some(Integer::from(n)))
                .unwrap()
        };
        assert_eq!(verdicts[0].status, Status::Inapplicable);
        assert_eq!(verdicts[at(5040)].status, Status::Fails);
        assert_eq!(
            check_one(5040, &InequalitySpec::new(SpecId::Robin))
                .unwrap()
                .status,
            Status::Fails
        );
        for (r, v) in recs.iter().zip(&verdicts).skip(at(5040) + 1) {
            assert_eq!(v.status, Status::Holds, "record {}", r.index);
        }
        let chain = robin_deduction_chain(&recs, &verdicts).unwrap();
        assert_eq!(chain.from_n, Some(Integer::from(55440)));
        assert_eq!(chain.links, recs.len() - at(5040) - 2);
        let i = at(5040);
        assert!(
            robin_interval_deduction(&recs[i], &verdicts[i], &recs[i + 1], &verdicts[i + 1])
                .is_err()
        );
        assert!(robin_interval_deduction(
            &recs[i + 1],
            &verdicts[i + 1],
            &recs[i + 3],
            &verdicts[i + 3]
        )
        .is_err());
    }

    #[test]
    fn robin_check_ca_vector() {
        let table = sieve_primes(1000).unwrap();
        let v = ca_exponents(&eps("0.045"), &table).unwrap();
        assert_eq!(v.value(64), Some(Integer::from(5040)));
        assert_eq!(robin_check_ca(&v).unwrap().status, Status::Fails);
        let two = ca_exponents(&eps("1"), &table).unwrap();
        assert_eq!(robin_check_ca(&two).unwrap().status, Status::Inapplicable);
    }

    #[test]
    fn budget() {
        assert!(ca_sequence(2e6, 128).is_err());
        assert!(ca_sequence(0.0, 128).is_err());
    }
}
