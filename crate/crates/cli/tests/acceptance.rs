//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use robin_core::arith::{
    factorize, is_t_free, phi, psi_t, sieve_primes, sigma, sigma_over_n, sigma_over_n_totient_form,
    sigma_range,
};
use robin_core::ca::ca_scan;
use robin_core::primorial::{
    champion_scan, lemma202_check, r_t_direct, r_t_formula, r_t_limit, r_t_series,
};
use robin_core::rigor::{parse_decimal, Enclosure, Verdict3};
use robin_core::verify::{scan_range, InequalitySpec, ScanConfig, SpecId, Status};
use rug::{Integer, Rational};
use serde_json::Value;

const SET_A: [u64; 26] = [
    1, 2, 4, 5, 6, 8, 9, 10, 12, 16, 18, 20, 24, 30, 36, 48, 60, 72, 84, 120, 180, 240, 360, 840,
    2520, 5040,
];
const SET_B: [u64; 21] = [
    1, 2, 4, 6, 8, 10, 12, 16, 18, 20, 24, 30, 36, 48, 60, 72, 120, 180, 240, 360, 2520,
];

type Criterion = (u32, &'static str, fn() -> Check);

struct Check {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Check {
    Check {
        pass,
        detail: detail.into(),
    }
}

fn robin(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_robin"))
        .args(args)
        .args(["--format", "json"])
        .output()
        .expect("robin runs");
    let code = out.status.code().unwrap_or(-1);
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, json)
}

fn u64_list(v: &Value) -> Vec<u64> {
    v.as_array()
        .map(|a| a.iter().filter_map(Value::as_u64).collect())
        .unwrap_or_default()
}

fn exact(v: &Value, end: &str) -> Rational {
    parse_decimal(v[end].as_str().unwrap_or("nan")).unwrap_or_else(|_| Rational::from(-1))
}

fn find<'a>(list: &'a Value, key: &str, id: &str) -> &'a Value {
    list.as_array()
        .and_then(|a| a.iter().find(|s| s[key] == id))
        .unwrap_or(&Value::Null)
}

fn exceptions(ineq: &str, expected: &[u64]) -> Check {
    let (code, json) = robin(&["exceptions", "--ineq", ineq, "--limit", "5040"]);
    let got = u64_list(&json["results"]["exceptions"]);
    let missing: Vec<u64> = expected
        .iter()
        .copied()
        .filter(|n| !got.contains(n))
        .collect();
    let extra: Vec<u64> = got
        .iter()
        .copied()
        .filter(|n| !expected.contains(n))
        .collect();
    check(
        code == 0 && got == expected,
        format!(
            "{ineq}: {} exceptions, missing {missing:?}, extra {extra:?}",
            got.len()
        ),
    )
}

fn c1() -> Check {
    exceptions("axler-cubic", &SET_A)
}

fn c2() -> Check {
    let mut expected = SET_B.to_vec();
    expected.push(5040);
    exceptions("old-cubic", &expected)
}

fn c3() -> Check {
    let mut expected = SET_A.to_vec();
    expected.extend([3, 720]);
    expected.sort_unstable();
    exceptions("axler-eps", &expected)
}

fn c4() -> Check {
    let spec = InequalitySpec::new(SpecId::Robin);
    let mut reports = Vec::new();
    let mut slowest = Duration::ZERO;
    for workers in [1usize, 4, 16] {
        let cfg = ScanConfig {
            workers,
            ..ScanConfig::default()
        };
        match scan_range(5041, 100_000_000, &spec, &cfg) {
            Ok(r) => {
                slowest = slowest.max(r.wall_time);
                reports.push(r);
            }
            Err(e) => return check(false, format!("scan failed: {e}")),
        }
    }
    let same = reports.windows(2).all(|w| {
        w[0].violations == w[1].violations
            && w[0].undecided == w[1].undecided
            && (w[0].holds, w[0].rechecked) == (w[1].holds, w[1].rechecked)
    });
    let r = &reports[0];
    let (code, _) = robin(&[
        "scan", "--ineq", "robin", "--from", "5041", "--to", "10000000",
    ]);
    check(
        r.violations.is_empty() && r.undecided.is_empty() && same && code == 0 && slowest < Duration::from_secs(600),
        format!(
            "[5041, 1e8): {} violations, {} undecided, identical across workers 1/4/16: {same}, slowest {:.1}s; cli 1e7 exit {code}",
            r.violations.len(),
            r.undecided.len(),
            slowest.as_secs_f64()
        ),
    )
}

fn c5() -> Check {
    let start = Instant::now();
    let (code, json) = robin(&["certificate", "thm102"]);
    let elapsed = start.elapsed();
    let r = &json["results"];
    let rhs = &find(&r["steps"], "id", "rhs_below_one")["value"];
    let margin = &find(&r["values"], "name", "margin")["value"];
    let limit = parse_decimal("1e-6").unwrap();
    let ok = code == 0
        && r["overall"] == "TRUE"
        && exact(rhs, "hi") < 1
        && exact(margin, "lo") > 0
        && exact(margin, "hi") < limit
        && elapsed < Duration::from_secs(1);
    check(
        ok,
        format!(
            "overall {}, rhs hi {}, margin [{}, {}], {:.2}s",
            r["overall"],
            rhs["hi"].as_str().unwrap_or("?"),
            margin["lo"].as_str().unwrap_or("?"),
            margin["hi"].as_str().unwrap_or("?"),
            elapsed.as_secs_f64()
        ),
    )
}

fn listed(p: u64) -> Option<u64> {
    match p {
        2 => Some(20),
        5 => Some(8),
        12..=19 => Some(4),
        20..=41 => Some(3),
        42..=139 => Some(2),
        140..=1777 => Some(1),
        _ => None,
    }
}

fn c6() -> Check {
    let start = Instant::now();
    let (code, json) = robin(&["certificate", "thm104"]);
    let elapsed = start.elapsed();
    let r = &json["results"];
    let cutoffs = r["cutoffs"].as_array().cloned().unwrap_or_default();
    let mut mismatches = Vec::new();
    let expected_count = sieve_primes(1777)
        .unwrap()
        .primes()
        .iter()
        .filter(|&&p| listed(p).is_some())
        .count();
    let mut compared = 0;
    for row in &cutoffs {
        let p = row["p"].as_u64().unwrap_or(0);
        if let Some(m) = listed(p) {
            compared += 1;
            if row["m_star"].as_u64() != Some(m) {
                mismatches.push(p);
            }
        }
    }
    let boundaries = ["23", "43", "149", "1783"]
        .iter()
        .all(|p| find(&r["steps"], "id", &format!("boundary_{p}_fails"))["verdict"] == "TRUE");
    let m1783 = cutoffs
        .iter()
        .any(|row| row["p"] == 1783 && row["m_star"] == 0);
    check(
        code == 0
            && r["overall"] == "TRUE"
            && mismatches.is_empty()
            && compared == expected_count
            && boundaries
            && m1783
            && elapsed < Duration::from_secs(5),
        format!(
            "{compared} of {expected_count} listed primes compared, mismatches {mismatches:?}, boundary primes fail next exponent: {boundaries}, {:.2}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn c7() -> Check {
    let start = Instant::now();
    let table = sieve_primes(10_000_000).unwrap();
    let mut failures = Vec::new();
    let mut widest = 0.0f64;
    for k in 2..=8u64 {
        for t in [2u32, 7, 21] {
            let cutoff = if t == 2 { 10_000_000 } else { 10_000 };
            let a = r_t_direct(k, t, &table, 128).unwrap();
            let b = r_t_formula(k, t, &table, cutoff, 128).unwrap();
            widest = widest.max(a.width_f64()).max(b.width_f64());
            if !a.intersects(&b) || a.width_f64() >= 1e-6 || b.width_f64() >= 1e-6 {
                failures.push((k, t));
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        failures.is_empty() && elapsed < Duration::from_secs(30),
        format!(
            "21 (k, t) pairs, failures {failures:?}, widest enclosure {widest:.2e}, {:.1}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn abs(e: &Enclosure) -> Enclosure {
    if e.lo() >= &0 {
        e.clone()
    } else if e.hi() <= &0 {
        e.neg()
    } else {
        e.hull(&e.neg()).hull(&Enclosure::zero(e.prec()))
    }
}

fn c8() -> Check {
    let start = Instant::now();
    let table = sieve_primes(110_000).unwrap();
    let series = r_t_series(10_000, 2, &table, 128).unwrap();
    let limit = r_t_limit(2, 128).unwrap();
    let gaps: Vec<Enclosure> = [10usize, 100, 1000, 10_000]
        .iter()
        .map(|&k| abs(&series[k - 2].sub(&limit)))
        .collect();
    let decreasing = gaps.windows(2).all(|w| w[1].lt(&w[0]) == Verdict3::True);
    let last = gaps.last().unwrap().hi_f64();
    let elapsed = start.elapsed();
    check(
        decreasing && last < 0.05 && elapsed < Duration::from_secs(60),
        format!(
            "|R_2(N_k) - e^gamma/zeta(2)| at k = 10, 1e2, 1e3, 1e4: {:?}, {:.1}s",
            gaps.iter()
                .map(|g| format!("{:.4}", g.mid_f64()))
                .collect::<Vec<_>>(),
            elapsed.as_secs_f64()
        ),
    )
}

fn c9() -> Check {
    let start = Instant::now();
    let primes = sieve_primes(100).unwrap();
    let champions = champion_scan(100_000, 2).unwrap();
    let bad: Vec<u64> = champions
        .iter()
        .copied()
        .filter(|&n| {
            let mut base = 1u64;
            for &p in primes.primes() {
                if base * p > n {
                    break;
                }
                base *= p;
            }
            n % base != 0
        })
        .collect();
    let mut lemma_fail = Vec::new();
    let mut ties = 0;
    for k in 2..=6u64 {
        for t in [2u32, 21] {
            match lemma202_check(k, t, 128) {
                Ok(o) => {
                    ties += o.ties.len();
                    if !o.holds() {
                        lemma_fail.push((k, t));
                    }
                }
                Err(_) => lemma_fail.push((k, t)),
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        bad.is_empty() && lemma_fail.is_empty() && elapsed < Duration::from_secs(300),
        format!(
            "{} champions below 1e5, non-primorial-multiples {bad:?}; primorial maximality failures {lemma_fail:?}, ties {ties}; {:.1}s",
            champions.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn c10() -> Check {
    let start = Instant::now();
    // Brute-force oracle: maximizers of sigma(n)/n^(1+eps) over n <= 1e5 on an eps grid.
    let sig = sigma_range(2, 100_001).unwrap();
    let mut oracle: Vec<u64> = Vec::new();
    for i in 0..600 {
        let e = 0.7 * 0.99f64.powi(i);
        let mut best = (f64::NEG_INFINITY, 0u64);
        for (j, &s) in sig.iter().enumerate() {
            let n = j as u64 + 2;
            let v = (s as f64).ln() - (1.0 + e) * (n as f64).ln();
            if v > best.0 {
                best = (v, n);
            }
        }
        if best.1 <= 5040 && oracle.last() != Some(&best.1) {
            oracle.push(best.1);
        }
    }
    let expected = [2u64, 6, 12, 60, 120, 360, 2520, 5040];
    let (records, verdicts) = match ca_scan(1e6, 128) {
        Ok(x) => x,
        Err(e) => return check(false, format!("ca scan failed: {e}")),
    };
    let first: Vec<u64> = records
        .iter()
        .take(8)
        .filter_map(|r| r.value.as_ref()?.to_u64())
        .collect();
    let idx = records
        .iter()
        .position(|r| r.value == Some(Integer::from(5040)))
        .unwrap_or(usize::MAX);
    let after: Vec<&Status> = verdicts
        .iter()
        .skip(idx.saturating_add(1))
        .map(|v| &v.status)
        .collect();
    let all_hold = idx != usize::MAX && after.iter().all(|s| **s == Status::Holds);
    let last = records.last().map_or(0.0, |r| r.log_n.hi_f64());
    let elapsed = start.elapsed();
    check(
        first == expected && oracle == expected && all_hold && elapsed < Duration::from_secs(600),
        format!(
            "first {first:?} (oracle {oracle:?}); {} records after 5040 up to log n = {last:.1}, all HOLDS: {all_hold}; {:.1}s",
            after.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn c11() -> Check {
    let start = Instant::now();
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    let mut failures: Vec<String> = Vec::new();

    let mut pairs = 0;
    while pairs < 2000 {
        let (a, b) = (
            rng.gen_range(1u64..1_000_000),
            rng.gen_range(1u64..1_000_000),
        );
        if gcd(a, b) != 1 {
            continue;
        }
        pairs += 1;
        let (fa, fb, fab) = (factorize(a), factorize(b), factorize(a * b));
        if sigma(&fab) != sigma(&fa) * sigma(&fb)
            || phi(&fab) != phi(&fa) * phi(&fb)
            || psi_t(&fab, 3).unwrap() != psi_t(&fa, 3).unwrap() * psi_t(&fb, 3).unwrap()
        {
            failures.push(format!("multiplicativity at ({a}, {b})"));
        }
    }
    for n in 1..=100_000u64 {
        let f = factorize(n);
        let s = sigma_over_n(&f);
        if sigma_over_n_totient_form(&f) != s {
            failures.push(format!("totient identity at {n}"));
        }
        if n >= 2 && s >= Rational::from((Integer::from(n), phi(&f))) {
            failures.push(format!("totient bound at {n}"));
        }
        for t in [2u32, 3, 5, 7, 21] {
            if is_t_free(&f, t).unwrap() && sigma(&f) > psi_t(&f, t).unwrap() {
                failures.push(format!("t-free bound at n = {n}, t = {t}"));
            }
        }
    }
    for _ in 0..2000 {
        let x = Rational::from((
            rng.gen_range(-100_000i64..100_000),
            rng.gen_range(1i64..1000),
        ));
        let y = Rational::from((rng.gen_range(1i64..100_000), rng.gen_range(1i64..1000)));
        let prec = rng.gen_range(16u32..512);
        let (ex, ey) = (
            Enclosure::from_rational(&x, prec),
            Enclosure::from_rational(&y, prec),
        );
        let ok = ex.add(&ey).contains_rational(&(x.clone() + &y))
            && ex.mul(&ey).contains_rational(&(x.clone() * &y))
            && ex.div(&ey).unwrap().contains_rational(&(x.clone() / &y))
            && ey.ln().unwrap().exp().contains_rational(&y);
        if !ok {
            failures.push(format!("enclosure containment at {x}, {y}, {prec} bits"));
        }
    }
    let spec = InequalitySpec::new(SpecId::Robin);
    let base = ScanConfig {
        segment_size: 1 << 16,
        workers: 1,
        ..ScanConfig::default()
    };
    let r1 = scan_range(3, 2_000_000, &spec, &base).unwrap();
    for workers in [4, 16] {
        let r = scan_range(3, 2_000_000, &spec, &ScanConfig { workers, ..base }).unwrap();
        if (r.violations.clone(), r.holds, r.rechecked)
            != (r1.violations.clone(), r1.holds, r1.rechecked)
        {
            failures.push(format!("scan differs at {workers} workers"));
        }
    }
    let elapsed = start.elapsed();
    failures.truncate(5);
    check(
        failures.is_empty() && elapsed < Duration::from_secs(900),
        format!(
            "multiplicativity, totient identity and bound, t-free bound, containment, determinism; failures {failures:?}; {:.1}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn c12() -> Check {
    let (code, json) = robin(&["certificate", "cor104"]);
    let r = &json["results"];
    let eps_star = &find(&r["values"], "name", "eps_star_p_k0")["value"];
    let decided = matches!(r["overall"].as_str(), Some("TRUE" | "FALSE"));
    let bits = r["precision"].as_u64().unwrap_or(u64::MAX);
    let well_formed =
        eps_star["lo"].is_string() && eps_star["hi"].is_string() && r["notes"].is_array();
    check(
        decided && bits <= 1024 && well_formed && matches!(code, 0 | 1),
        format!(
            "overall {} at {bits} bits, eps* in [{}, {}], exit {code}",
            r["overall"],
            eps_star["lo"].as_str().unwrap_or("?"),
            eps_star["hi"].as_str().unwrap_or("?")
        ),
    )
}

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "exceptional set A for the cubic bound", c1),
        (2, "old cubic bound exceptions equal B plus 5040", c2),
        (3, "(1 + eps) bound exceptions equal A plus 3 and 720", c3),
        (4, "Robin scan on [5041, 1e8)", c4),
        (5, "21-free certificate", c5),
        (6, "valuation cutoff certificate", c6),
        (7, "zeta-product identity for R_t", c7),
        (8, "limit e^gamma/zeta(2)", c8),
        (9, "champions and primorial maximality", c9),
        (10, "colossally abundant scan", c10),
        (11, "property suites", c11),
        (12, "(1 + eps) certificate completes", c12),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let c = run();
        if !c.pass {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {} {name}: {} [{:.2}s]",
            if c.pass { "PASS" } else { "FAIL" },
            c.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
