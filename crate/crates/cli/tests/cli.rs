use std::process::{Command, Output};

use serde_json::Value;

fn robin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_robin"))
        .args(args)
        .env_remove("ROBIN_FORMAT")
        .env_remove("ROBIN_PRECISION")
        .output()
        .expect("robin runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn without_wall_time(out: &Output) -> Value {
    let mut v = json(out);
    v.as_object_mut().unwrap().remove("wall_time_s");
    v
}

#[test]
fn usage_errors_exit_3() {
    for args in [
        vec!["--bogus"],
        vec!["frobnicate"],
        vec!["scan", "--ineq", "nope", "--from", "5", "--to", "9"],
        vec!["--precision", "8", "factor", "10"],
        vec!["--segment-size", "100", "factor", "10"],
        vec!["certificate", "thm999"],
    ] {
        let out = robin(&args);
        assert_eq!(out.status.code(), Some(3), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn exit_codes() {
    assert_eq!(
        robin(&["scan", "--ineq", "robin", "--from", "3", "--to", "5041"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        robin(&["scan", "--ineq", "robin", "--from", "5041", "--to", "100000"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(robin(&["sigma", "5040"]).status.code(), Some(1));
    assert_eq!(robin(&["sigma", "5041"]).status.code(), Some(0));
    assert_eq!(robin(&["sigma", "2"]).status.code(), Some(2));
    assert_eq!(
        robin(&["scan", "--ineq", "robin", "--from", "1", "--to", "10"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(robin(&["certificate", "thm102"]).status.code(), Some(0));
    assert_eq!(
        robin(&["champions", "--limit", "10000", "--lemma-k", "2,3,4"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        robin(&["exceptions", "--ineq", "robin", "--limit", "100000000"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn report_envelope() {
    let out = robin(&[
        "scan",
        "--ineq",
        "ivic",
        "--from",
        "7",
        "--to",
        "100000",
        "--workers",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "scan");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["config"]["workers"], 2);
    assert_eq!(v["config"]["precision"], 128);
    assert_eq!(v["results"]["violations"], serde_json::json!([]));
    assert!(v["wall_time_s"].is_f64());
}

#[test]
fn enclosure_schema() {
    let v = json(&robin(&["--precision", "200", "certificate", "thm102"]));
    let margin = v["results"]["values"]
        .as_array()
        .unwrap()
        .iter()
        .find(|x| x["name"] == "margin")
        .unwrap()["value"]
        .clone();
    let keys: Vec<&String> = margin.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["bits", "hi", "lo"]);
    assert!(margin["lo"].as_str().unwrap().contains('e'));
    assert_eq!(margin["bits"], 200);
}

#[test]
fn byte_identical_reruns() {
    for args in [
        vec!["certificate", "thm104"],
        vec!["exceptions", "--ineq", "axler-eps", "--limit", "5040"],
        vec!["primorials", "--k-max", "50"],
        vec!["ca-scan", "--max-log-n", "200"],
    ] {
        let a = robin(&args);
        let b = robin(&args);
        assert_eq!(without_wall_time(&a), without_wall_time(&b), "{args:?}");
    }
    let a = robin(&["primorials", "--k-max", "50", "--format", "csv"]);
    let b = robin(&["primorials", "--k-max", "50", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn primorial_csv() {
    let out = robin(&["primorials", "--k-max", "20", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,p_k,theta_lo,theta_hi,r2_lo,r2_hi"));
    let row3: Vec<&str> = lines.nth(2).unwrap().split(',').collect();
    assert_eq!(&row3[..2], ["3", "5"]);
    // theta(5) = log 30
    let lo: f64 = row3[2].parse().unwrap();
    assert!((lo - 30f64.ln()).abs() < 1e-12);
    assert_eq!(text.lines().count(), 21);
}

#[test]
fn env_overrides() {
    let out = Command::new(env!("CARGO_BIN_EXE_robin"))
        .args(["factor", "5040"])
        .env("ROBIN_FORMAT", "table")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("5040 = 2^4 * 3^2 * 5 * 7"));
}

#[test]
fn exceptions_match_set_a() {
    let v = json(&robin(&[
        "exceptions",
        "--ineq",
        "axler-cubic",
        "--limit",
        "5040",
        "--format",
        "json",
    ]));
    let got: Vec<u64> = v["results"]["exceptions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert_eq!(
        got,
        [
            1, 2, 4, 5, 6, 8, 9, 10, 12, 16, 18, 20, 24, 30, 36, 48, 60, 72, 84, 120, 180, 240,
            360, 840, 2520, 5040
        ]
    );
}
