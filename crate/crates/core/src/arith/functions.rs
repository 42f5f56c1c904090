//! Multiplicative functions evaluated from a factorization.

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::factor::{is_prime, Factorization};
use crate::error::{Error, Result};

/// Exact rational, always kept in lowest terms with positive denominator.
pub type ExactRational = Rational;

/// Sum of divisors, as the product of (p^(e+1) - 1)/(p - 1).
pub fn sigma(f: &Factorization) -> Integer {
    let mut acc = Integer::from(1);
    for &(p, e) in f.factors() {
        let mut term = ipow(p, e + 1);
        term -= 1;
        term /= p - 1;
        acc *= term;
    }
    acc
}

/// Euler's totient, n * prod (1 - 1/p).
pub fn phi(f: &Factorization) -> Integer {
    let mut acc = Integer::from(1);
    for &(p, e) in f.factors() {
        let mut term = ipow(p, e - 1);
        term *= p - 1;
        acc *= term;
    }
    acc
}

/// Generalized Dedekind function n * prod_{p | n} (1 + 1/p + ... + 1/p^(t-1)).
///
/// Not integral in general: each prime power p^e contributes
/// p^e (p^t - 1) / (p^(t-1) (p - 1)).
pub fn psi_t(f: &Factorization, t: u32) -> Result<ExactRational> {
    check_t(t)?;
    let mut num = Integer::from(1);
    let mut den = Integer::from(1);
    for &(p, e) in f.factors() {
        num *= ipow(p, t) - 1u32;
        num *= ipow(p, e);
        let mut d = ipow(p, t - 1);
        d *= p - 1;
        den *= d;
    }
    Ok(Rational::from((num, den)))
}

/// Psi_t(n)/n, which depends only on the primes dividing n.
pub fn psi_t_ratio(f: &Factorization, t: u32) -> Result<ExactRational> {
    Ok(psi_t(f, t)? / Integer::from(f.n()))
}

/// p-adic valuation of `n`.
pub fn nu(n: u64, p: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::InvalidArgument("nu is undefined at n = 0".into()));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut n = n;
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    Ok(e)
}

/// True when no prime's t-th power divides n.
pub fn is_t_free(f: &Factorization, t: u32) -> Result<bool> {
    check_t(t)?;
    Ok(f.factors().iter().all(|&(_, e)| e < t))
}

/// sigma(n)/n computed as (n/phi(n)) * prod (1 - 1/q^(1+e)).
pub fn sigma_over_n_totient_form(f: &Factorization) -> ExactRational {
    let mut acc = Rational::from((Integer::from(f.n()), phi(f)));
    for &(q, e) in f.factors() {
        let qe = ipow(q, e + 1);
        acc *= Rational::from((qe.clone() - 1u32, qe));
    }
    acc
}

/// sigma(n)/n directly from the divisor sum.
pub fn sigma_over_n(f: &Factorization) -> ExactRational {
    Rational::from((sigma(f), Integer::from(f.n())))
}

/// p^e as a big integer.
pub fn ipow(p: u64, e: u32) -> Integer {
    Integer::from(p).pow(e)
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
