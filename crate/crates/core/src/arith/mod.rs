//! Exact integer arithmetic: primes, factorization and the multiplicative
//! functions sigma, phi and Psi_t.

mod factor;
mod functions;
mod primes;
mod range;

pub use factor::{factorize, is_prime, Factorization};
pub use functions::{
    ipow, is_t_free, nu, phi, psi_t, psi_t_ratio, sigma, sigma_over_n, sigma_over_n_totient_form,
    ExactRational,
};
pub use primes::{isqrt, sieve_primes, sieve_primes_with, PrimeTable, SieveBudget};
pub use range::{
    default_workers, map_segments, sigma_range, sigma_range_with, RangeConfig, SigmaSieve,
};
