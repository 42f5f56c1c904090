//! Robin-type inequalities on single integers and on ranges.
//!
//! Every inequality has the shape sigma(n)/n < rhs(n) with rhs built from
//! L = log log n. Verdicts compare the exact rational sigma(n)/n against an
//! enclosure of rhs.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rug::{Integer, Rational};

use crate::arith::{factorize, map_segments, sigma, Factorization, RangeConfig};
use crate::error::{Error, Result};
use crate::rigor::{
    escalate, exp_gamma, parse_decimal, Enclosure, Verdict3, DEFAULT_PRECISION, MAX_PRECISION,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpecId {
    Robin,
    RobinC0,
    Cubic,
    OldCubic,
    Ivic,
    HertleinEps,
    SharpEps,
}

impl SpecId {
    pub const ALL: [SpecId; 7] = [
        SpecId::Robin,
        SpecId::RobinC0,
        SpecId::Cubic,
        SpecId::OldCubic,
        SpecId::Ivic,
        SpecId::HertleinEps,
        SpecId::SharpEps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpecId::Robin => "ROBIN",
            SpecId::RobinC0 => "ROBIN_C0",
            SpecId::Cubic => "AXLER_CUBIC",
            SpecId::OldCubic => "OLD_CUBIC",
            SpecId::Ivic => "IVIC",
            SpecId::HertleinEps => "HERTLEIN_EPS",
            SpecId::SharpEps => "AXLER_EPS",
        }
    }
}

impl fmt::Display for SpecId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpecId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        SpecId::ALL
            .into_iter()
            .find(|id| id.name() == norm)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown inequality '{s}'")))
    }
}

/// Right-hand side shapes, L = log log n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    /// e^gamma L (1 + c / L^e); c = 0 is Robin's inequality.
    Correction { c: Rational, exponent: u32 },
    /// c L.
    Linear { c: Rational },
    /// (1 + eps) e^gamma L.
    Factor { eps: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalitySpec {
    pub id: SpecId,
    pub shape: Shape,
    /// Named constants with the literals they came from.
    pub constants: Vec<(String, String)>,
}

impl InequalitySpec {
    pub fn new(id: SpecId) -> Self {
        let lit = |s: &str| parse_decimal(s).expect("valid literal");
        let (shape, constants): (Shape, &[(&str, &str)]) = match id {
            SpecId::Robin => (
                Shape::Correction {
                    c: Rational::new(),
                    exponent: 1,
                },
                &[],
            ),
            SpecId::RobinC0 => (
                Shape::Correction {
                    c: lit("0.6483"),
                    exponent: 2,
                },
                &[("c", "0.6483"), ("exponent", "2")],
            ),
            SpecId::Cubic => (
                Shape::Correction {
                    c: lit("0.0094243"),
                    exponent: 3,
                },
                &[("c", "0.0094243"), ("exponent", "3")],
            ),
            SpecId::OldCubic => (
                Shape::Correction {
                    c: lit("0.1209"),
                    exponent: 3,
                },
                &[("c", "0.1209"), ("exponent", "3")],
            ),
            SpecId::Ivic => (Shape::Linear { c: lit("2.59") }, &[("c", "2.59")]),
            SpecId::HertleinEps => (
                Shape::Factor {
                    eps: lit("5.645e-7"),
                },
                &[("eps", "5.645e-7")],
            ),
            SpecId::SharpEps => (
                Shape::Factor {
                    eps: lit("3.15367e-7"),
                },
                &[("eps", "3.15367e-7")],
            ),
        };
        InequalitySpec {
            id,
            shape,
            constants: constants
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        }
    }

    /// rhs(n) as an enclosure; None when log log n <= 0.
    pub fn rhs(&self, n: u64, prec: u32) -> Result<Option<Enclosure>> {
        if n < 3 {
            return Ok(None);
        }
        let l = Enclosure::from_u64(n, prec).ln()?.ln()?;
        let one = Enclosure::one(prec);
        let value = match &self.shape {
            Shape::Correction { c, exponent } => {
                let corr = Enclosure::from_rational(c, prec).div(&l.powi(*exponent as i32)?)?;
                exp_gamma(prec).mul(&l).mul(&one.add(&corr))
            }
            Shape::Linear { c } => Enclosure::from_rational(c, prec).mul(&l),
            Shape::Factor { eps } => one.add_rational(eps).mul(&exp_gamma(prec)).mul(&l),
        };
        Ok(Some(value))
    }

    /// Hardware-float rhs for the scan filter.
    pub fn rhs_f64(&self, n: u64) -> f64 {
        const EXP_GAMMA: f64 = 1.781_072_417_990_198;
        let l = (n as f64).ln().ln();
        match &self.shape {
            Shape::Correction { c, exponent } => {
                EXP_GAMMA * l * (1.0 + c.to_f64() / l.powi(*exponent as i32))
            }
            Shape::Linear { c } => c.to_f64() * l,
            Shape::Factor { eps } => (1.0 + eps.to_f64()) * EXP_GAMMA * l,
        }
    }
}

impl From<SpecId> for InequalitySpec {
    fn from(id: SpecId) -> Self {
        InequalitySpec::new(id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Holds,
    Fails,
    Inapplicable,
    Undecided,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Holds => "HOLDS",
            Status::Fails => "FAILS",
            Status::Inapplicable => "INAPPLICABLE",
            Status::Undecided => "UNDECIDED",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub n: u64,
    pub status: Status,
    /// rhs - sigma(n)/n; None when inapplicable.
    pub margin: Option<Enclosure>,
    pub sigma_over_n: Rational,
    pub precision: u32,
}

/// Decides `spec` at n, escalating precision up to the cap.
pub fn check_one(n: u64, spec: &InequalitySpec) -> Result<Verdict> {
    check_one_from(n, spec, DEFAULT_PRECISION)
}

pub fn check_one_from(n: u64, spec: &InequalitySpec, start_prec: u32) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    check_with_sigma(n, &sigma(&factorize(n)), spec, start_prec)
}

fn check_with_sigma(
    n: u64,
    sig: &Integer,
    spec: &InequalitySpec,
    start_prec: u32,
) -> Result<Verdict> {
    let ratio = Rational::from((sig.clone(), Integer::from(n)));
    if n < 3 {
        return Ok(Verdict {
            n,
            status: Status::Inapplicable,
            margin: None,
            sigma_over_n: ratio,
            precision: start_prec,
        });
    }
    let (verdict, margin, prec) = escalate(start_prec, MAX_PRECISION, |prec| {
        let rhs = spec.rhs(n, prec)?.expect("n >= 3");
        let lhs = Enclosure::from_rational(&ratio, prec);
        Ok((lhs.lt(&rhs), rhs.sub(&lhs)))
    })?;
    let status = match verdict {
        Verdict3::True => Status::Holds,
        Verdict3::False => Status::Fails,
        Verdict3::Undecided { .. } => Status::Undecided,
    };
    Ok(Verdict {
        n,
        status,
        margin: Some(margin),
        sigma_over_n: ratio,
        precision: prec,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    pub precision: u32,
    pub segment_size: u64,
    pub workers: usize,
    /// Largest range a single scan accepts.
    pub max_len: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        let range = RangeConfig::default();
        ScanConfig {
            precision: DEFAULT_PRECISION,
            segment_size: range.segment_size,
            workers: range.workers,
            max_len: 10_000_000_000,
        }
    }
}

/// Relative slack of the float filter.
pub const FILTER_SLACK: f64 = 1e-9;

/// Below this n the rhs is not guaranteed increasing, so the per-segment
/// shortcut is off.
const MONOTONE_FROM: u64 = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub spec: SpecId,
    pub lo: u64,
    pub hi: u64,
    pub violations: Vec<u64>,
    pub inapplicable: Vec<u64>,
    pub undecided: Vec<u64>,
    pub holds: u64,
    /// Integers that went through the rigorous re-check.
    pub rechecked: u64,
    pub config: ScanConfig,
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn checked(&self) -> u64 {
        self.hi - self.lo
    }

    /// Equality ignoring wall time.
    pub fn same_content(&self, other: &Self) -> bool {
        let strip = |r: &Self| Self {
            wall_time: Duration::ZERO,
            ..r.clone()
        };
        strip(self) == strip(other)
    }
}

struct SegmentResult {
    violations: Vec<u64>,
    undecided: Vec<u64>,
    holds: u64,
    rechecked: u64,
    error: Option<Error>,
}

/// Checks every n in [lo, hi) against `spec`.
pub fn scan_range(
    lo: u64,
    hi: u64,
    spec: &InequalitySpec,
    cfg: &ScanConfig,
) -> Result<VerificationReport> {
    if lo < 3 || lo >= hi {
        return Err(Error::InvalidArgument(format!(
            "scan range [{lo}, {hi}) must satisfy 3 <= lo < hi"
        )));
    }
    if hi - lo > cfg.max_len {
        return Err(Error::BudgetExceeded {
            what: "scan length",
            requested: hi - lo,
            limit: cfg.max_len,
        });
    }
    let start = Instant::now();
    let range_cfg = RangeConfig {
        segment_size: cfg.segment_size,
        workers: cfg.workers,
        ..RangeConfig::default()
    };
    let parts = map_segments(lo, hi, &range_cfg, |a, sigmas| {
        scan_segment(a, sigmas, spec, cfg.precision)
    })?;
    let mut report = VerificationReport {
        spec: spec.id,
        lo,
        hi,
        violations: Vec::new(),
        inapplicable: Vec::new(),
        undecided: Vec::new(),
        holds: 0,
        rechecked: 0,
        config: *cfg,
        wall_time: Duration::ZERO,
    };
    for part in parts {
        if let Some(e) = part.error {
            return Err(e);
        }
        report.violations.extend(part.violations);
        report.undecided.extend(part.undecided);
        report.holds += part.holds;
        report.rechecked += part.rechecked;
    }
    report.wall_time = start.elapsed();
    Ok(report)
}

fn scan_segment(a: u64, sigmas: &[u128], spec: &InequalitySpec, prec: u32) -> SegmentResult {
    let mut out = SegmentResult {
        violations: Vec::new(),
        undecided: Vec::new(),
        holds: 0,
        rechecked: 0,
        error: None,
    };
    let floor = (a >= MONOTONE_FROM).then(|| spec.rhs_f64(a) * (1.0 - FILTER_SLACK));
    for (i, &s) in sigmas.iter().enumerate() {
        let n = a + i as u64;
        let ratio = s as f64 / n as f64;
        if floor.is_some_and(|f| ratio < f) || ratio < spec.rhs_f64(n) * (1.0 - FILTER_SLACK) {
            out.holds += 1;
            continue;
        }
        out.rechecked += 1;
        match check_with_sigma(n, &Integer::from(s), spec, prec) {
            Ok(v) => match v.status {
                Status::Holds => out.holds += 1,
                Status::Fails => out.violations.push(n),
                _ => out.undecided.push(n),
            },
            Err(e) => {
                out.error = Some(e);
                return out;
            }
        }
    }
    out
}

pub const EXCEPTION_LIMIT: u64 = 10_000_000;

/// All n <= limit where `spec` fails or is inapplicable.
pub fn exception_set(limit: u64, spec: &InequalitySpec) -> Result<Vec<u64>> {
    exception_set_with(limit, spec, &ScanConfig::default())
}

pub fn exception_set_with(limit: u64, spec: &InequalitySpec, cfg: &ScanConfig) -> Result<Vec<u64>> {
    if limit > EXCEPTION_LIMIT {
        return Err(Error::BudgetExceeded {
            what: "exception set limit",
            requested: limit,
            limit: EXCEPTION_LIMIT,
        });
    }
    let mut out: Vec<u64> = (1..=limit.min(2)).collect();
    if limit >= 3 {
        let report = scan_range(3, limit + 1, spec, cfg)?;
        if let Some(&n) = report.undecided.first() {
            return Err(Error::Refused(format!(
                "{} undecided at n = {n} even at {MAX_PRECISION} bits",
                spec.id
            )));
        }
        out.extend(report.violations);
    }
    Ok(out)
}

/// Which theorem a valuation rule comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// The new valuation family.
    Extended,
    Hertlein,
}

/// How the last extended rule is read: nu_p(n) = 1 or nu_p(n) <= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reading {
    Exact,
    AtMost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleOutcome {
    pub family: Family,
    pub label: String,
    /// Primes in (p_lo, p_hi].
    pub p_lo: u64,
    pub p_hi: u64,
    pub bound: u32,
    pub reading: Reading,
    pub satisfied: bool,
    /// Smallest prime in the range meeting the condition.
    pub witness: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationClass {
    pub n: Integer,
    pub rules: Vec<RuleOutcome>,
}

impl ValuationClass {
    /// Some extended rule holds, with the last rule read as `reading`.
    pub fn extended(&self, reading: Reading) -> bool {
        self.rules.iter().any(|r| {
            r.family == Family::Extended && r.satisfied && (r.bound != 1 || r.reading == reading)
        })
    }

    pub fn hertlein(&self) -> bool {
        self.rules
            .iter()
            .any(|r| r.family == Family::Hertlein && r.satisfied)
    }
}

const EXTENDED_RULES: [(u64, u64, u32); 6] = [
    (1, 2, 20),
    (3, 5, 8),
    (11, 19, 4),
    (19, 41, 3),
    (41, 139, 2),
    (139, 1777, 1),
];

const HERTLEIN_RULES: [(u64, u32); 5] = [(2, 19), (3, 12), (5, 7), (7, 6), (11, 5)];

fn small_primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo + 1..=hi)
        .filter(|&p| crate::arith::is_prime(p))
        .collect()
}

/// Evaluates every valuation rule on n.
pub fn valuation_class(f: &Factorization) -> ValuationClass {
    let mut rules = Vec::new();
    let mut push = |family, label: String, p_lo, p_hi, bound, reading, ok: &dyn Fn(u32) -> bool| {
        let witness = small_primes_between(p_lo, p_hi)
            .into_iter()
            .find(|&p| ok(f.exponent_of(p)));
        rules.push(RuleOutcome {
            family,
            label,
            p_lo,
            p_hi,
            bound,
            reading,
            satisfied: witness.is_some(),
            witness,
        });
    };
    for (lo, hi, bound) in EXTENDED_RULES {
        let range = if hi - lo == 1 || (lo, hi) == (3, 5) {
            format!("p = {hi}")
        } else {
            format!("{lo} < p <= {hi}")
        };
        if bound == 1 {
            push(
                Family::Extended,
                format!("nu_p = 1, {range}"),
                lo,
                hi,
                1,
                Reading::Exact,
                &|e| e == 1,
            );
            push(
                Family::Extended,
                format!("nu_p <= 1, {range}"),
                lo,
                hi,
                1,
                Reading::AtMost,
                &|e| e <= 1,
            );
        } else {
            push(
                Family::Extended,
                format!("nu_p <= {bound}, {range}"),
                lo,
                hi,
                bound,
                Reading::AtMost,
                &|e| e <= bound,
            );
        }
    }
    for (p, bound) in HERTLEIN_RULES {
        push(
            Family::Hertlein,
            format!("nu_{p} <= {bound}"),
            p - 1,
            p,
            bound,
            Reading::AtMost,
            &|e| e <= bound,
        );
    }
    ValuationClass {
        n: f.n_big(),
        rules,
    }
}
