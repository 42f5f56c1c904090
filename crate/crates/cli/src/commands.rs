use robin_core::arith::{factorize, sieve_primes, sigma, Factorization};
use robin_core::ca::{ca_scan, robin_deduction_chain};
use robin_core::certificates::{
    certify, CertificateId, CertificateParams, CertificateReport, Step,
};
use robin_core::primorial::{champion_scan, lemma202_check, primorial_records, r_t_series};
use robin_core::rigor::Verdict3;
use robin_core::verify::{
    check_one_from, exception_set_with, scan_range, valuation_class, InequalitySpec, ScanConfig,
    SpecId, Status,
};
use robin_core::Error;
use rug::Integer;
use serde_json::{json, Value};

use crate::output::{enclosure, Config, Outcome, Rows};
use crate::Command;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Certificate {
    Thm102,
    Thm103,
    Thm104,
    Cor104,
}

/// Errors from the library are inputs it cannot act on.
pub fn error_exit(_: &Error) -> u8 {
    2
}

pub fn run(cmd: &Command, cfg: &Config) -> Result<Outcome, Error> {
    match cmd {
        Command::Sigma { n } => sigma_cmd(*n, cfg),
        Command::Factor { n } => factor_cmd(*n),
        Command::Scan { ineq, from, to } => scan_cmd(*ineq, *from, *to, cfg),
        Command::Exceptions { ineq, limit } => exceptions_cmd(*ineq, *limit, cfg),
        Command::Primorials { k_max, t } => primorials_cmd(*k_max, *t, cfg),
        Command::Certificate { which } => certificate_cmd(*which, cfg),
        Command::CaScan { max_log_n } => ca_cmd(*max_log_n, cfg),
        Command::Champions { limit, t, lemma_k } => champions_cmd(*limit, *t, lemma_k, cfg),
    }
}

fn factors_json(f: &Factorization) -> Value {
    json!(f
        .factors()
        .iter()
        .map(|&(p, e)| json!([p, e]))
        .collect::<Vec<_>>())
}

fn sigma_cmd(n: u64, cfg: &Config) -> Result<Outcome, Error> {
    if n == 0 {
        return Err(Error::Domain("sigma(0) is undefined".into()));
    }
    let f = factorize(n);
    let s = sigma(&f);
    let robin = check_one_from(n, &InequalitySpec::new(SpecId::Robin), cfg.precision)?;
    let class = valuation_class(&f);
    let mut rows = Rows::new(&["n", "factorization", "sigma", "sigma_over_n", "robin"]);
    rows.push(vec![
        n.to_string(),
        f.to_string(),
        s.to_string(),
        robin.sigma_over_n.to_string(),
        robin.status.to_string(),
    ]);
    let exit = match robin.status {
        Status::Holds => 0,
        Status::Fails => 1,
        _ => 2,
    };
    Ok(Outcome {
        results: json!({
            "n": n,
            "factors": factors_json(&f),
            "sigma": s.to_string(),
            "sigma_over_n": robin.sigma_over_n.to_string(),
            "robin": {
                "status": robin.status.label(),
                "margin": robin.margin.as_ref().map(enclosure),
                "bits": robin.precision,
            },
            "valuation_rules": class.rules.iter().map(|r| json!({
                "rule": r.label,
                "family": format!("{:?}", r.family).to_lowercase(),
                "satisfied": r.satisfied,
                "witness": r.witness,
            })).collect::<Vec<_>>(),
        }),
        rows,
        summary: Vec::new(),
        exit,
    })
}

fn factor_cmd(n: u64) -> Result<Outcome, Error> {
    if n == 0 {
        return Err(Error::Domain("0 has no factorization".into()));
    }
    let f = factorize(n);
    let mut rows = Rows::new(&["p", "e"]);
    for &(p, e) in f.factors() {
        rows.push(vec![p.to_string(), e.to_string()]);
    }
    Ok(Outcome {
        results: json!({ "n": n, "factors": factors_json(&f), "display": f.to_string() }),
        rows,
        summary: vec![format!("{n} = {f}")],
        exit: 0,
    })
}

fn scan_config(cfg: &Config) -> ScanConfig {
    ScanConfig {
        precision: cfg.precision,
        segment_size: cfg.segment_size,
        workers: cfg.workers,
        ..ScanConfig::default()
    }
}

fn scan_cmd(ineq: SpecId, from: u64, to: u64, cfg: &Config) -> Result<Outcome, Error> {
    let spec = InequalitySpec::new(ineq);
    let report = scan_range(from, to, &spec, &scan_config(cfg))?;
    let mut rows = Rows::new(&["n", "status"]);
    for &n in &report.violations {
        rows.push(vec![n.to_string(), "FAILS".into()]);
    }
    for &n in &report.undecided {
        rows.push(vec![n.to_string(), "UNDECIDED".into()]);
    }
    let exit = if !report.violations.is_empty() {
        1
    } else if !report.undecided.is_empty() {
        2
    } else {
        0
    };
    Ok(Outcome {
        results: json!({
            "ineq": spec.id.name(),
            "constants": spec.constants,
            "from": from,
            "to": to,
            "violations": report.violations,
            "undecided": report.undecided,
            "inapplicable": report.inapplicable,
            "counts": {
                "checked": report.checked(),
                "holds": report.holds,
                "violations": report.violations.len(),
                "rechecked": report.rechecked,
            },
        }),
        summary: vec![format!(
            "{}: {} checked in [{from}, {to}), {} violations, {} undecided, {} re-checked rigorously",
            spec.id,
            report.checked(),
            report.violations.len(),
            report.undecided.len(),
            report.rechecked
        )],
        rows,
        exit,
    })
}

fn exceptions_cmd(ineq: SpecId, limit: u64, cfg: &Config) -> Result<Outcome, Error> {
    let spec = InequalitySpec::new(ineq);
    let set = exception_set_with(limit, &spec, &scan_config(cfg))?;
    let mut rows = Rows::new(&["n"]);
    for n in &set {
        rows.push(vec![n.to_string()]);
    }
    Ok(Outcome {
        results: json!({
            "ineq": spec.id.name(),
            "constants": spec.constants,
            "limit": limit,
            "exceptions": set,
            "count": set.len(),
        }),
        summary: vec![format!(
            "{} exceptions up to {limit}: {}",
            spec.id,
            set.len()
        )],
        rows,
        exit: 0,
    })
}

/// p_k < k (log k + log log k) for k >= 6.
fn prime_bound(k: u64) -> u64 {
    let kf = (k.max(6)) as f64;
    (kf * (kf.ln() + kf.ln().ln())).ceil() as u64 + 20
}

fn primorials_cmd(k_max: u64, t: u32, cfg: &Config) -> Result<Outcome, Error> {
    if k_max < 2 {
        return Err(Error::Domain("k-max must be at least 2".into()));
    }
    if k_max > 1_000_000 {
        return Err(Error::BudgetExceeded {
            what: "primorial k-max",
            requested: k_max,
            limit: 1_000_000,
        });
    }
    let table = sieve_primes(prime_bound(k_max))?;
    let records = primorial_records(k_max, &table, cfg.precision)?;
    let r = r_t_series(k_max, t, &table, cfg.precision)?;
    let rlo = format!("r{t}_lo");
    let rhi = format!("r{t}_hi");
    let mut rows = Rows::new(&["k", "p_k", "theta_lo", "theta_hi", &rlo, &rhi]);
    let mut list = Vec::new();
    for rec in &records {
        let (tlo, thi) = rec.theta.decimal_bounds();
        let rt = (rec.k >= 2).then(|| &r[rec.k as usize - 2]);
        let (lo, hi) = rt.map_or((String::new(), String::new()), |e| e.decimal_bounds());
        rows.push(vec![
            rec.k.to_string(),
            rec.p_k.to_string(),
            tlo,
            thi,
            lo,
            hi,
        ]);
        list.push(json!({
            "k": rec.k,
            "p_k": rec.p_k,
            "theta": enclosure(&rec.theta),
            "mertens": rec.mertens.as_ref().map(enclosure),
            "r_t": rt.map(enclosure),
        }));
    }
    Ok(Outcome {
        results: json!({ "t": t, "k_max": k_max, "records": list }),
        rows,
        summary: Vec::new(),
        exit: 0,
    })
}

fn step_json(s: &Step) -> Value {
    json!({
        "id": s.id,
        "description": s.description,
        "verdict": s.verdict.label(),
        "value": enclosure(&s.value),
    })
}

fn certificate_cmd(which: Certificate, cfg: &Config) -> Result<Outcome, Error> {
    let id = match which {
        Certificate::Thm102 => CertificateId::Thm102,
        Certificate::Thm103 => CertificateId::Thm103,
        Certificate::Thm104 => CertificateId::Thm104,
        Certificate::Cor104 => CertificateId::Cor104,
    };
    let report: CertificateReport = certify(id, &CertificateParams::default(), cfg.precision)?;
    let mut rows = Rows::new(&["kind", "id", "verdict", "lo", "hi"]);
    for (kind, steps) in [("step", &report.steps), ("supporting", &report.supporting)] {
        for s in steps.iter() {
            let (lo, hi) = s.value.decimal_bounds();
            rows.push(vec![
                kind.into(),
                s.id.clone(),
                s.verdict.label().into(),
                lo,
                hi,
            ]);
        }
    }
    for v in &report.values {
        let (lo, hi) = v.value.decimal_bounds();
        rows.push(vec!["value".into(), v.name.clone(), String::new(), lo, hi]);
    }
    let mut summary = vec![format!("{}: {}", report.title, report.overall)];
    summary.extend(report.notes.iter().map(|n| format!("note: {n}")));
    let exit = match report.overall {
        Verdict3::True => 0,
        Verdict3::False => 1,
        Verdict3::Undecided { .. } => 2,
    };
    Ok(Outcome {
        results: json!({
            "id": report.id,
            "title": report.title,
            "overall": report.overall.label(),
            "precision": report.precision,
            "steps": report.steps.iter().map(step_json).collect::<Vec<_>>(),
            "supporting": report.supporting.iter().map(step_json).collect::<Vec<_>>(),
            "values": report.values.iter().map(|v| json!({ "name": v.name, "value": enclosure(&v.value) })).collect::<Vec<_>>(),
            "cutoffs": report.cutoffs.iter().map(|c| json!({ "p": c.p, "m_star": c.m_star, "listed": c.listed })).collect::<Vec<_>>(),
            "notes": report.notes,
            "constants": report.constants.iter().map(|(k, v)| json!({ "name": k, "literal": v })).collect::<Vec<_>>(),
            "external_inputs": report.external_inputs,
        }),
        rows,
        summary,
        exit,
    })
}

fn ca_cmd(max_log_n: f64, cfg: &Config) -> Result<Outcome, Error> {
    let (records, verdicts) = ca_scan(max_log_n, cfg.precision)?;
    let mut rows = Rows::new(&[
        "index", "prime", "exponent", "log_n_lo", "log_n_hi", "status",
    ]);
    let mut failures = Vec::new();
    let mut undecided = Vec::new();
    let five040 = Integer::from(5040);
    let mut past_5040 = false;
    for (r, v) in records.iter().zip(&verdicts) {
        let (lo, hi) = r.log_n.decimal_bounds();
        rows.push(vec![
            r.index.to_string(),
            r.prime.to_string(),
            r.exponent.to_string(),
            lo,
            hi,
            v.status.to_string(),
        ]);
        let entry = || {
            json!({
                "index": r.index,
                "n": r.value.as_ref().map(|x| x.to_string()),
                "log_n": enclosure(&r.log_n),
                "margin": v.margin.as_ref().map(enclosure),
            })
        };
        match v.status {
            Status::Fails => failures.push((past_5040, entry())),
            Status::Undecided => undecided.push(entry()),
            _ => {}
        }
        if r.value.as_ref() == Some(&five040) {
            past_5040 = true;
        }
    }
    let beyond: Vec<Value> = failures
        .iter()
        .filter(|(b, _)| *b)
        .map(|(_, e)| e.clone())
        .collect();
    let chain = robin_deduction_chain(&records, &verdicts).ok();
    let exit = if !beyond.is_empty() {
        1
    } else if !undecided.is_empty() {
        2
    } else {
        0
    };
    let first: Vec<String> = records
        .iter()
        .take(12)
        .filter_map(|r| r.value.as_ref().map(|v| v.to_string()))
        .collect();
    Ok(Outcome {
        results: json!({
            "max_log_n": max_log_n,
            "records": records.len(),
            "ties": records.iter().filter(|r| r.tie).count(),
            "first_values": first,
            "failures": failures.iter().map(|(_, e)| e.clone()).collect::<Vec<_>>(),
            "failures_above_5040": beyond,
            "undecided": undecided,
            "chain": chain.as_ref().map(|c| json!({
                "from_n": c.from_n.as_ref().map(|x| x.to_string()),
                "to_log_n": c.to_log_n.as_ref().map(enclosure),
                "links": c.links,
                "rule": robin_core::ca::INTERVAL_RULE,
            })),
            "last": records.last().map(|r| json!({
                "index": r.index,
                "log_n": enclosure(&r.log_n),
                "distinct_primes": r.distinct_primes,
            })),
        }),
        summary: vec![format!(
            "{} CA records with log n <= {max_log_n}; {} fail Robin ({} above 5040)",
            records.len(),
            failures.len(),
            failures.iter().filter(|(b, _)| *b).count()
        )],
        rows,
        exit,
    })
}

/// Largest primorial <= n.
fn primorial_below(n: u64, primes: &[u64]) -> u64 {
    let mut acc = 1u64;
    for &p in primes {
        match acc.checked_mul(p) {
            Some(next) if next <= n => acc = next,
            _ => break,
        }
    }
    acc
}

fn champions_cmd(limit: u64, t: u32, lemma_k: &[u64], cfg: &Config) -> Result<Outcome, Error> {
    let champions = champion_scan(limit, t)?;
    let primes = sieve_primes(100)?;
    let mut rows = Rows::new(&["n", "largest_primorial_below", "kind"]);
    let mut bad = Vec::new();
    let mut list = Vec::new();
    for &n in &champions {
        let base = primorial_below(n, primes.primes());
        let kind = if base == n {
            "primorial"
        } else if n % base == 0 {
            "primorial multiple"
        } else {
            bad.push(n);
            "other"
        };
        rows.push(vec![n.to_string(), base.to_string(), kind.into()]);
        list.push(json!({ "n": n, "primorial": base, "kind": kind }));
    }
    let mut lemma = Vec::new();
    let mut lemma_ok = true;
    for &k in lemma_k {
        let o = lemma202_check(k, t, cfg.precision)?;
        lemma_ok &= o.holds();
        lemma.push(json!({
            "k": k,
            "range": [o.range.0, o.range.1],
            "at_primorial": enclosure(&o.at_primorial),
            "exceeding": o.exceeding,
            "ties": o.ties,
            "runner_up": o.runner_up.map(|(n, r)| json!({ "n": n, "approx": r })),
            "holds": o.holds(),
        }));
    }
    Ok(Outcome {
        results: json!({
            "t": t,
            "limit": limit,
            "champions": list,
            "non_primorial_champions": bad,
            "lemma": lemma,
        }),
        summary: vec![format!(
            "{} champions of Psi_{t}(n)/n up to {limit}; {} not primorial multiples",
            champions.len(),
            bad.len()
        )],
        rows,
        exit: if bad.is_empty() && lemma_ok { 0 } else { 1 },
    })
}
