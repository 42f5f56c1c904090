//! Directed-rounding enclosures and rigorous constants.

mod constants;
mod enclosure;

pub use constants::{
    bernoulli_numbers, euler_gamma, exp_gamma, tail_product_upper, zeta_int, zeta_int_integral_tail,
};
pub use enclosure::{
    decimal_digits, escalate, float_to_decimal, parse_decimal, Enclosure, Verdict3,
    DEFAULT_PRECISION, MAX_PRECISION, MIN_PRECISION,
};
