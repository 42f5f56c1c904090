//! Interval arithmetic over MPFR floats with outward rounding.
//!
//! An [`Enclosure`] is a pair of binary floats `lo <= hi` at a common working
//! precision. Every operation rounds `lo` toward minus infinity and `hi`
//! toward plus infinity, and MPFR's elementary functions are correctly
//! rounded, so the true value always stays inside.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 128;
/// Precision ceiling for automatic escalation.
pub const MAX_PRECISION: u32 = 1024;
/// Smallest precision accepted anywhere.
pub const MIN_PRECISION: u32 = 16;

/// Outcome of comparing two enclosures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict3 {
    True,
    False,
    /// The difference straddles zero; `width` is its enclosure width.
    Undecided {
        width: f64,
    },
}

impl Verdict3 {
    pub fn is_true(self) -> bool {
        self == Verdict3::True
    }

    pub fn is_decided(self) -> bool {
        !matches!(self, Verdict3::Undecided { .. })
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict3::True => "TRUE",
            Verdict3::False => "FALSE",
            Verdict3::Undecided { .. } => "UNDECIDED",
        }
    }

    pub fn and(self, other: Verdict3) -> Verdict3 {
        match (self, other) {
            (Verdict3::False, _) | (_, Verdict3::False) => Verdict3::False,
            (Verdict3::True, Verdict3::True) => Verdict3::True,
            (Verdict3::Undecided { width: a }, Verdict3::Undecided { width: b }) => {
                Verdict3::Undecided { width: a.max(b) }
            }
            (u @ Verdict3::Undecided { .. }, _) | (_, u @ Verdict3::Undecided { .. }) => u,
        }
    }
}

impl std::ops::Not for Verdict3 {
    type Output = Verdict3;
    fn not(self) -> Verdict3 {
        match self {
            Verdict3::True => Verdict3::False,
            Verdict3::False => Verdict3::True,
            u => u,
        }
    }
}

impl fmt::Display for Verdict3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict3::Undecided { width } => write!(f, "UNDECIDED({width:e})"),
            v => f.write_str(v.label()),
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct Enclosure {
    lo: Float,
    hi: Float,
}

fn down<T>(prec: u32, val: T) -> Float
where
    Float: rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, val, Round::Down).0
}

fn up<T>(prec: u32, val: T) -> Float
where
    Float: rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, val, Round::Up).0
}

fn check_prec(prec: u32) -> u32 {
    assert!(
        (MIN_PRECISION..=rug::float::prec_max()).contains(&prec),
        "precision {prec} out of range"
    );
    prec
}

impl Enclosure {
    /// Builds from explicit bounds; both must be finite with `lo <= hi`.
    pub fn from_bounds(lo: Float, hi: Float) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::Domain(format!("invalid bounds [{lo}, {hi}]")));
        }
        let prec = lo.prec().max(hi.prec());
        Ok(Enclosure {
            lo: down(prec, &lo),
            hi: up(prec, &hi),
        })
    }

    fn raw(lo: Float, hi: Float) -> Self {
        debug_assert!(lo <= hi, "inverted enclosure [{lo}, {hi}]");
        Enclosure { lo, hi }
    }

    pub fn from_integer(v: &Integer, prec: u32) -> Self {
        let prec = check_prec(prec);
        Enclosure::raw(down(prec, v), up(prec, v))
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Enclosure::from_integer(&Integer::from(v), prec)
    }

    pub fn from_u64(v: u64, prec: u32) -> Self {
        Enclosure::from_integer(&Integer::from(v), prec)
    }

    pub fn from_rational(v: &Rational, prec: u32) -> Self {
        let prec = check_prec(prec);
        Enclosure::raw(down(prec, v), up(prec, v))
    }

    /// Parses a plain or scientific decimal literal exactly, then encloses it.
    pub fn from_decimal(literal: &str, prec: u32) -> Result<Self> {
        Ok(Enclosure::from_rational(&parse_decimal(literal)?, prec))
    }

    pub fn zero(prec: u32) -> Self {
        Enclosure::from_i64(0, prec)
    }

    pub fn one(prec: u32) -> Self {
        Enclosure::from_i64(1, prec)
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    /// Re-rounds outward to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        Enclosure::raw(down(prec, &self.lo), up(prec, &self.hi))
    }

    /// hi - lo, rounded up.
    pub fn width(&self) -> Float {
        up(self.prec(), &self.hi - &self.lo)
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64_round(Round::Up)
    }

    pub fn mid_f64(&self) -> f64 {
        let mid = Float::with_val(self.prec() + 1, &self.lo + &self.hi) / 2u32;
        mid.to_f64()
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64_round(Round::Down)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64_round(Round::Up)
    }

    pub fn contains_rational(&self, v: &Rational) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    pub fn contains_float(&self, v: &Float) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    /// True when `other` lies inside `self`.
    pub fn contains(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        let prec = self.prec().max(other.prec());
        let lo = if self.lo <= other.lo {
            &self.lo
        } else {
            &other.lo
        };
        let hi = if self.hi >= other.hi {
            &self.hi
        } else {
            &other.hi
        };
        Enclosure::raw(down(prec, lo), up(prec, hi))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    fn prec2(&self, other: &Enclosure) -> u32 {
        self.prec().max(other.prec())
    }

    pub fn add(&self, y: &Enclosure) -> Enclosure {
        let p = self.prec2(y);
        Enclosure::raw(down(p, &self.lo + &y.lo), up(p, &self.hi + &y.hi))
    }

    pub fn sub(&self, y: &Enclosure) -> Enclosure {
        let p = self.prec2(y);
        Enclosure::raw(down(p, &self.lo - &y.hi), up(p, &self.hi - &y.lo))
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure::raw(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, y: &Enclosure) -> Enclosure {
        let p = self.prec2(y);
        // Fast path for the common all-nonnegative case.
        if self.lo >= 0 && y.lo >= 0 {
            return Enclosure::raw(down(p, &self.lo * &y.lo), up(p, &self.hi * &y.hi));
        }
        let pairs = [
            (&self.lo, &y.lo),
            (&self.lo, &y.hi),
            (&self.hi, &y.lo),
            (&self.hi, &y.hi),
        ];
        let lo = pairs
            .iter()
            .map(|(a, b)| down(p, *a * *b))
            .min_by(|a, b| a.partial_cmp(b).unwrap())
            .unwrap();
        let hi = pairs
            .iter()
            .map(|(a, b)| up(p, *a * *b))
            .max_by(|a, b| a.partial_cmp(b).unwrap())
            .unwrap();
        Enclosure::raw(lo, hi)
    }

    pub fn div(&self, y: &Enclosure) -> Result<Enclosure> {
        if y.lo <= 0 && y.hi >= 0 {
            return Err(Error::Domain(format!(
                "division by an enclosure containing zero [{}, {}]",
                y.lo, y.hi
            )));
        }
        let p = self.prec2(y);
        let pairs = [
            (&self.lo, &y.lo),
            (&self.lo, &y.hi),
            (&self.hi, &y.lo),
            (&self.hi, &y.hi),
        ];
        let lo = pairs
            .iter()
            .map(|(a, b)| down(p, *a / *b))
            .min_by(|a, b| a.partial_cmp(b).unwrap())
            .unwrap();
        let hi = pairs
            .iter()
            .map(|(a, b)| up(p, *a / *b))
            .max_by(|a, b| a.partial_cmp(b).unwrap())
            .unwrap();
        Ok(Enclosure::raw(lo, hi))
    }

    pub fn recip(&self) -> Result<Enclosure> {
        Enclosure::one(self.prec()).div(self)
    }

    pub fn mul_u64(&self, k: u64) -> Enclosure {
        self.mul(&Enclosure::from_u64(k, self.prec()))
    }

    pub fn div_u64(&self, k: u64) -> Result<Enclosure> {
        self.div(&Enclosure::from_u64(k, self.prec()))
    }

    pub fn add_rational(&self, r: &Rational) -> Enclosure {
        self.add(&Enclosure::from_rational(r, self.prec()))
    }

    /// Integer power, tight for even exponents over sign-straddling inputs.
    pub fn powi(&self, n: i32) -> Result<Enclosure> {
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        let p = self.prec();
        if n == 0 {
            return Ok(Enclosure::one(p));
        }
        let n_u = n as u32;
        let pw = |x: &Float, r: Round| Float::with_val_round(p, x.pow(n_u), r).0;
        let out = if self.lo >= 0 {
            Enclosure::raw(pw(&self.lo, Round::Down), pw(&self.hi, Round::Up))
        } else if self.hi <= 0 {
            if n % 2 == 0 {
                Enclosure::raw(pw(&self.hi, Round::Down), pw(&self.lo, Round::Up))
            } else {
                Enclosure::raw(pw(&self.lo, Round::Down), pw(&self.hi, Round::Up))
            }
        } else if n % 2 == 0 {
            let m = if -self.lo.clone() >= self.hi {
                -self.lo.clone()
            } else {
                self.hi.clone()
            };
            Enclosure::raw(Float::with_val(p, 0), pw(&m, Round::Up))
        } else {
            Enclosure::raw(pw(&self.lo, Round::Down), pw(&self.hi, Round::Up))
        };
        Ok(out)
    }

    fn monotone(&self, f: impl Fn(&mut Float, Round) -> Ordering) -> Enclosure {
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        f(&mut lo, Round::Down);
        f(&mut hi, Round::Up);
        Enclosure::raw(lo, hi)
    }

    pub fn exp(&self) -> Enclosure {
        self.monotone(|x, r| x.exp_round(r))
    }

    pub fn ln(&self) -> Result<Enclosure> {
        if self.lo <= 0 {
            return Err(Error::Domain(format!(
                "log of enclosure with lo = {}",
                self.lo
            )));
        }
        Ok(self.monotone(|x, r| x.ln_round(r)))
    }

    /// log(1 + x), accurate for small x.
    pub fn ln_1p(&self) -> Result<Enclosure> {
        if self.lo <= -1 {
            return Err(Error::Domain(format!(
                "log1p of enclosure with lo = {}",
                self.lo
            )));
        }
        Ok(self.monotone(|x, r| x.ln_1p_round(r)))
    }

    pub fn sqrt(&self) -> Result<Enclosure> {
        if self.lo < 0 {
            return Err(Error::Domain("sqrt of negative enclosure".into()));
        }
        Ok(self.monotone(|x, r| x.sqrt_round(r)))
    }

    pub fn cbrt(&self) -> Enclosure {
        self.monotone(|x, r| x.cbrt_round(r))
    }

    /// Three-valued `self < other`.
    pub fn lt(&self, other: &Enclosure) -> Verdict3 {
        if self.hi < other.lo {
            Verdict3::True
        } else if self.lo >= other.hi {
            Verdict3::False
        } else {
            Verdict3::Undecided {
                width: self.sub(other).width_f64(),
            }
        }
    }

    /// Three-valued `self <= other`.
    pub fn le(&self, other: &Enclosure) -> Verdict3 {
        if self.hi <= other.lo {
            Verdict3::True
        } else if self.lo > other.hi {
            Verdict3::False
        } else {
            Verdict3::Undecided {
                width: self.sub(other).width_f64(),
            }
        }
    }

    pub fn gt(&self, other: &Enclosure) -> Verdict3 {
        other.lt(self)
    }

    /// Three-valued `self > 0`.
    pub fn is_positive(&self) -> Verdict3 {
        self.gt(&Enclosure::zero(self.prec()))
    }

    /// Decimal rendering of both endpoints, rounded outward, with enough
    /// digits that parsing them back at `prec` bits recovers the floats.
    pub fn decimal_bounds(&self) -> (String, String) {
        (
            float_to_decimal(&self.lo, Round::Down),
            float_to_decimal(&self.hi, Round::Up),
        )
    }
}

/// Decimal digits needed to pin a `prec`-bit float.
pub fn decimal_digits(prec: u32) -> usize {
    (f64::from(prec) * std::f64::consts::LOG10_2).ceil() as usize + 2
}

pub fn float_to_decimal(x: &Float, round: Round) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.to_string_radix_round(10, Some(decimal_digits(x.prec())), round)
}

/// Exact value of a decimal literal such as `0.0094243`, `3.3277e-4` or
/// `29996208012611`.
pub fn parse_decimal(literal: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("not a decimal literal: {literal:?}"));
    let s = literal.trim();
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    let digits: String = int_part
        .chars()
        .chain(frac_part.chars())
        .filter(|&c| c != '_')
        .collect();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let num = Integer::from_str_radix(&digits, 10).map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let ten = Integer::from(10);
    let mut r = if scale >= 0 {
        Rational::from(num * ten.pow(scale as u32))
    } else {
        Rational::from((num, ten.pow((-scale) as u32)))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Repeats `eval` at doubling precision from `start` until the verdict is
/// decided or `cap` bits is reached. Returns the verdict and the precision
/// that produced it.
pub fn escalate<T>(
    start: u32,
    cap: u32,
    mut eval: impl FnMut(u32) -> Result<(Verdict3, T)>,
) -> Result<(Verdict3, T, u32)> {
    let mut prec = start.max(MIN_PRECISION);
    loop {
        let (v, extra) = eval(prec)?;
        if v.is_decided() || prec >= cap {
            return Ok((v, extra, prec));
        }
        prec = (prec * 2).min(cap);
    }
}

impl fmt::Debug for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.decimal_bounds();
        write!(f, "[{lo}, {hi}]@{}", self.prec())
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &Enclosure {
    type Output = Enclosure;
    fn add(self, rhs: &Enclosure) -> Enclosure {
        Enclosure::add(self, rhs)
    }
}

impl Sub for &Enclosure {
    type Output = Enclosure;
    fn sub(self, rhs: &Enclosure) -> Enclosure {
        Enclosure::sub(self, rhs)
    }
}

impl Mul for &Enclosure {
    type Output = Enclosure;
    fn mul(self, rhs: &Enclosure) -> Enclosure {
        Enclosure::mul(self, rhs)
    }
}

impl Neg for &Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        Enclosure::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_decimal(s).unwrap()
    }

    #[test]
    fn log_of_one_is_tight() {
        let x = Enclosure::one(64).ln().unwrap();
        assert!(x.contains_rational(&Rational::new()));
        assert!(x.width() < Float::with_val(64, Float::i_exp(1, -62)));
    }

    #[test]
    fn exp_log_contains_seven() {
        let seven = Enclosure::from_u64(7, 128);
        let back = seven.ln().unwrap().exp();
        assert!(back.contains(&seven));
        assert!(back.width_f64() < 1e-35);
    }

    #[test]
    fn log_two_digits() {
        // Oracle: log 2 = sum_{k>=1} 1/(k 2^k), alternating-free and fast;
        // summing 80 terms leaves a tail below 2^-80.
        let mut s = Rational::new();
        for k in 1..=80u32 {
            s += Rational::from((1, Integer::from(k) << k));
        }
        let tail = Rational::from((1, Integer::from(1) << 80u32));
        let l2 = Enclosure::from_u64(2, 64).ln().unwrap();
        assert!(l2.lo() <= &(s.clone() + &tail) && l2.hi() >= &s);
        let a = Enclosure::from_decimal("0.6931471805", 64).unwrap();
        let b = Enclosure::from_decimal("0.6931471806", 64).unwrap();
        assert!(a.hi() < l2.lo() && l2.hi() < b.lo());
    }

    #[test]
    fn domain_errors() {
        let z = Enclosure::from_bounds(Float::with_val(64, -1), Float::with_val(64, 1)).unwrap();
        assert!(Enclosure::one(64).div(&z).is_err());
        assert!(z.ln().is_err());
        assert!(Enclosure::zero(64).ln().is_err());
        assert!(Enclosure::from_bounds(Float::with_val(64, 2), Float::with_val(64, 1)).is_err());
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(q("0.0094243"), Rational::from((94243, 10_000_000)));
        assert_eq!(q("3.3277e-4"), Rational::from((33277, 100_000_000)));
        assert_eq!(
            q("3.15367E-7"),
            Rational::from((315367, 1_000_000_000_000u64))
        );
        assert_eq!(q("29996208012611"), Rational::from(29_996_208_012_611u64));
        assert_eq!(q("-2.5"), Rational::from((-5, 2)));
        assert_eq!(q("1e3"), Rational::from(1000));
        assert!(parse_decimal("abc").is_err());
        assert!(parse_decimal("1.2.3").is_err());
        assert!(parse_decimal("").is_err());
    }

    #[test]
    fn decimal_literal_enclosure_contains_exact_value() {
        for lit in [
            "0.0094243",
            "3.3277e-4",
            "0.024334",
            "5.645e-7",
            "2.59",
            "0.1",
        ] {
            let e = Enclosure::from_decimal(lit, 128).unwrap();
            assert!(e.contains_rational(&q(lit)));
            assert!(e.width_f64() < 1e-35);
        }
    }

    #[test]
    fn powi_cases() {
        let x = Enclosure::from_bounds(Float::with_val(64, -2), Float::with_val(64, 3)).unwrap();
        let sq = x.powi(2).unwrap();
        assert_eq!(sq.lo().to_f64(), 0.0);
        assert_eq!(sq.hi().to_f64(), 9.0);
        let cube = x.powi(3).unwrap();
        assert_eq!((cube.lo().to_f64(), cube.hi().to_f64()), (-8.0, 27.0));
        let inv = Enclosure::from_u64(2, 64).powi(-3).unwrap();
        assert_eq!(inv.lo().to_f64(), 0.125);
    }

    #[test]
    fn comparisons_are_three_valued() {
        let a = Enclosure::from_decimal("1.0", 64).unwrap();
        let b = Enclosure::from_decimal("2.0", 64).unwrap();
        assert_eq!(a.lt(&b), Verdict3::True);
        assert_eq!(b.lt(&a), Verdict3::False);
        assert_eq!(a.lt(&a), Verdict3::False);
        assert_eq!(a.le(&a), Verdict3::True);
        let wide = a.hull(&b);
        assert!(matches!(
            wide.lt(&a.add(&Enclosure::from_decimal("0.5", 64).unwrap())),
            Verdict3::Undecided { .. }
        ));
    }

    #[test]
    fn decimal_bounds_round_trip() {
        let x = Enclosure::from_u64(3, 200).ln().unwrap();
        let (lo, hi) = x.decimal_bounds();
        let lo_back = Float::with_val(200, Float::parse(&lo).unwrap());
        let hi_back = Float::with_val(200, Float::parse(&hi).unwrap());
        assert_eq!(&lo_back, x.lo());
        assert_eq!(&hi_back, x.hi());
        assert!(q(&lo) <= *x.lo() && q(&hi) >= *x.hi());
    }

    #[test]
    fn verdict_logic() {
        let u = Verdict3::Undecided { width: 1.0 };
        assert_eq!(Verdict3::True.and(Verdict3::True), Verdict3::True);
        assert_eq!(Verdict3::True.and(Verdict3::False), Verdict3::False);
        assert_eq!(u.and(Verdict3::False), Verdict3::False);
        assert_eq!(u.and(Verdict3::True), u);
        assert_eq!(!Verdict3::True, Verdict3::False);
    }
}
