//! Rigorous computation around Robin's inequality sigma(n)/n < e^gamma log log n:
//! exact multiplicative functions and divisor-sum sieves, interval
//! enclosures, primorial ratios, range verification, proof certificates and
//! colossally abundant numbers.

pub mod arith;
pub mod ca;
pub mod certificates;
pub mod error;
pub mod primorial;
pub mod rigor;
pub mod verify;

pub use error::{Error, Result};
