//! Rigorous enclosures of gamma, e^gamma, zeta(t) and the prime-product tail
//! bound used for zeta-factor estimates.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::enclosure::{Enclosure, MIN_PRECISION};
use crate::error::{Error, Result};

/// Upper bound for pi used in the Brent-McMillan error term.
const PI_UPPER: (u32, u32) = (31416, 10000);

/// Euler-Mascheroni constant.
///
/// Brent-McMillan: with V = sum_k (n^k/k!)^2 and A = sum_k (n^k/k!)^2 H_k,
/// gamma = A/V - log n - K0(2n)/I0(2n), and 0 < K0(2n)/I0(2n) < pi e^(-4n).
/// Both series are summed exactly up to K = 5n + 10; the omitted tails have
/// consecutive-term ratio at most q = 2 (n/(K+2))^2, so each is bounded by
/// its first omitted term over (1 - q). n is chosen so that
/// pi e^(-4n) < 2^-(precision + 6).
pub fn euler_gamma(precision: u32) -> Enclosure {
    cached(&GAMMA_CACHE, precision, || {
        let n = ((f64::from(precision) + 8.0) * std::f64::consts::LN_2 / 4.0).ceil() as u32 + 1;
        brent_mcmillan(n, precision + 32)
            .expect("Brent-McMillan evaluation cannot hit a domain error")
            .with_prec(precision)
    })
}

/// e^gamma.
pub fn exp_gamma(precision: u32) -> Enclosure {
    cached(&EXP_GAMMA_CACHE, precision, || {
        euler_gamma(precision + 16).exp().with_prec(precision)
    })
}

static GAMMA_CACHE: OnceLock<Mutex<HashMap<u32, Enclosure>>> = OnceLock::new();
static EXP_GAMMA_CACHE: OnceLock<Mutex<HashMap<u32, Enclosure>>> = OnceLock::new();

fn cached(
    cell: &'static OnceLock<Mutex<HashMap<u32, Enclosure>>>,
    precision: u32,
    make: impl FnOnce() -> Enclosure,
) -> Enclosure {
    assert!(
        precision >= MIN_PRECISION,
        "precision below {MIN_PRECISION} bits"
    );
    let map = cell.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = map.lock().unwrap().get(&precision) {
        return hit.clone();
    }
    let value = make();
    map.lock().unwrap().insert(precision, value.clone());
    value
}

/// Brent-McMillan enclosure of gamma with parameter `n` at working precision
/// `wp`. Exposed for testing the error term at small `n`.
pub(crate) fn brent_mcmillan(n: u32, wp: u32) -> Result<Enclosure> {
    let k_max = 5 * n + 10;
    let n2 = Rational::from(Integer::from(n) * n);
    let mut term = Rational::from(1); // (n^k/k!)^2
    let mut harmonic = Rational::new(); // H_k
    let mut a_sum = Rational::new();
    let mut v_sum = Rational::from(1);
    for k in 1..=k_max {
        term *= &n2;
        term /= Integer::from(k) * k;
        harmonic += Rational::from((1, k));
        a_sum += Rational::from(&term * &harmonic);
        v_sum += &term;
    }
    let k1 = k_max + 1;
    let next_term = Rational::from(&term * &n2) / (Integer::from(k1) * k1);
    let next_harmonic = harmonic + Rational::from((1, k1));
    let q = Rational::from(2 * &n2) / (Integer::from(k_max + 2) * (k_max + 2));
    let one_minus_q = Rational::from(1) - q;
    let tail_v = Rational::from(&next_term / &one_minus_q);
    let tail_a = next_term * next_harmonic / one_minus_q;

    let a_lo = Enclosure::from_rational(&a_sum, wp);
    let a = a_lo.hull(&Enclosure::from_rational(&(a_sum.clone() + tail_a), wp));
    let v_lo = Enclosure::from_rational(&v_sum, wp);
    let v = v_lo.hull(&Enclosure::from_rational(&(v_sum.clone() + tail_v), wp));
    let ratio = a.div(&v)?;
    let log_n = Enclosure::from_u64(u64::from(n), wp).ln()?;

    let pi_hi = Enclosure::from_rational(&Rational::from(PI_UPPER), wp);
    let decay = Enclosure::from_i64(-4 * i64::from(n), wp).exp();
    let delta = Enclosure::zero(wp).hull(&pi_hi.mul(&decay));
    Ok(ratio.sub(&log_n).sub(&delta))
}

/// Bernoulli numbers B_0..=B_m (with B_1 = -1/2).
pub fn bernoulli_numbers(m: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(m + 1);
    b.push(Rational::from(1));
    for j in 1..=m {
        // sum_{k=0}^{j} C(j+1, k) B_k = 0
        let mut acc = Rational::new();
        let mut binom = Integer::from(1);
        for (k, bk) in b.iter().enumerate() {
            acc += Rational::from(&binom * bk);
            binom *= j + 1 - k;
            binom /= k + 1;
        }
        b.push(-acc / Integer::from(j + 1));
    }
    b
}

/// zeta(t) for integer t >= 2.
///
/// Sums n^-t for n < N exactly, then encloses sum_{n>=N} n^-t by the
/// Euler-Maclaurin expansion. For f(x) = x^-t every even derivative is
/// positive, so the expansion envelops the tail: after m correction terms
/// the remainder lies between zero and the (m+1)-th term.
pub fn zeta_int(t: u32, precision: u32) -> Result<Enclosure> {
    check_t(t)?;
    let wp = precision + 32;
    let n_cut = u64::from(precision.max(32));
    let partial = partial_zeta(t, n_cut - 1, wp);

    let nq = Integer::from(n_cut);
    let n_pow_t = nq.clone().pow(t);
    let mut tail = Rational::from((nq.clone(), n_pow_t.clone() * (t - 1))) // N^(1-t)/(t-1)
        + Rational::from((1, n_pow_t.clone() * 2u32)); // f(N)/2

    let threshold = Rational::from((1, Integer::from(1) << (wp + 8)));
    let max_j = 400usize;
    let bern = bernoulli_numbers(2 * max_j + 2);
    // rising = t (t+1) ... (t+2j-2), power = N^(t+2j-1), fact = (2j)!
    let mut rising = Integer::from(t);
    let mut power = n_pow_t * &nq;
    let mut fact = Integer::from(2);
    let mut last_abs: Option<Rational> = None;
    let mut envelope = Rational::new();
    for j in 1..=max_j {
        let term = Rational::from(&bern[2 * j] * &rising) / (Integer::from(&fact * &power));
        let abs = Rational::from(term.abs_ref());
        let growing = last_abs.as_ref().is_some_and(|prev| abs >= *prev);
        if growing || abs < threshold {
            envelope = term;
            break;
        }
        tail += &term;
        last_abs = Some(abs);
        let j2 = 2 * j as u32;
        rising *= (t + j2 - 1) * (t + j2);
        power *= &nq;
        power *= &nq;
        fact *= (j2 + 1) * (j2 + 2);
        envelope = Rational::from(&bern[2 * j + 2] * &rising) / (Integer::from(&fact * &power));
    }
    let base = partial.add(&Enclosure::from_rational(&tail, wp));
    let with_envelope = base.add(&Enclosure::from_rational(&envelope, wp));
    Ok(base.hull(&with_envelope).with_prec(precision))
}

/// zeta(t) bracketed by the plain integral tail:
/// sum_{n <= N} n^-t + [(N+1)^(1-t)/(t-1), N^(1-t)/(t-1)].
pub fn zeta_int_integral_tail(t: u32, n_terms: u64, precision: u32) -> Result<Enclosure> {
    check_t(t)?;
    if n_terms == 0 {
        return Err(Error::InvalidArgument(
            "need at least one partial term".into(),
        ));
    }
    let partial = partial_zeta(t, n_terms, precision);
    let integral_from = |x: u64| {
        let xi = Integer::from(x);
        Rational::from((xi.clone(), xi.pow(t) * (t - 1)))
    };
    let lo = Enclosure::from_rational(&integral_from(n_terms + 1), precision);
    let hi = Enclosure::from_rational(&integral_from(n_terms), precision);
    Ok(partial.add(&lo.hull(&hi)))
}

fn partial_zeta(t: u32, upto: u64, wp: u32) -> Enclosure {
    // Descending n so the small terms accumulate first.
    let mut acc = Enclosure::zero(wp);
    for n in (1..=upto).rev() {
        acc = acc.add(&Enclosure::from_rational(
            &Rational::from((1, Integer::from(n).pow(t))),
            wp,
        ));
    }
    acc
}

/// Upper enclosure for prod_{p > x} (1 - p^-t)^-1, namely
/// exp(t / ((t - 1) x^(t - 1))). Valid for every x > 1: the log of the
/// product is at most (1 - x^-t)^-1 sum_{n > x} n^-t, which the bound
/// dominates.
pub fn tail_product_upper(t: u32, x: &Enclosure) -> Result<Enclosure> {
    check_t(t)?;
    let p = x.prec();
    if *x.lo() <= 1 {
        return Err(Error::Domain("tail product bound needs x > 1".into()));
    }
    let denom = x.powi(t as i32 - 1)?.mul_u64(u64::from(t - 1));
    let expo = Enclosure::from_u64(u64::from(t), p).div(&denom)?;
    Ok(expo.exp())
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
