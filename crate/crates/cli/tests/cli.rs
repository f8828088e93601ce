use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tpalg::{build_schrodinger, format_scalar, parse_scalar, LinearMap};

fn tests_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tpalg")).args(args).current_dir(tests_dir()).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    let code = out.status.code().expect("exit code");
    let mut v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\nstderr: {}", String::from_utf8_lossy(&out.stderr)));
    assert!(v["timing_ms"].is_u64());
    v.as_object_mut().unwrap().remove("timing_ms");
    (v, code)
}

fn golden(name: &str) -> Value {
    let text = std::fs::read_to_string(tests_dir().join("golden").join(format!("{name}.json"))).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn golden_reports() {
    let cases: &[(&str, &[&str])] = &[
        ("algebra_s2_show", &["algebra", "schrodinger", "--n", "2", "--show"]),
        ("derivations_s2", &["derivations", "schrodinger", "--n", "2", "--delta", "1/2", "--grading", "standard"]),
        ("tp_s2_search", &["tp", "schrodinger", "--n", "2", "--search", "--normalize"]),
        ("tp_s3_search", &["tp", "schrodinger", "--n", "3", "--search"]),
        ("tp_s2_witness", &["tp", "schrodinger", "--n", "2", "--check", "fixtures/witness.prod"]),
    ];
    for (name, args) in cases {
        let (v, code) = json(args);
        assert_eq!(code, 0, "{name}");
        assert_eq!(v, golden(name), "{name}");
    }
}

#[test]
fn s2_show_lists_every_relation() {
    let (v, _) = json(&["algebra", "schrodinger", "--n", "2", "--show"]);
    assert_eq!(v["result"]["dim"], 9);
    // 3 from sl2, 6 Heisenberg/h, 4 e/f on y/x, 4 from s12.
    assert_eq!(v["result"]["brackets"].as_array().unwrap().len(), 17);
    let out = run(&["algebra", "schrodinger", "--n", "2", "--show"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.trim_start().starts_with("- [")).count(), 17);
}

#[test]
fn jacobi_checks_and_exit_codes() {
    let (v, code) = json(&["algebra", "schrodinger", "--n", "1", "--check-jacobi"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["jacobi"]["ok"], true);

    let (v, code) = json(&["algebra", "--file", "fixtures/corrupt.alg", "--check-jacobi"]);
    assert_eq!(code, 1);
    let violations = v["result"]["jacobi"]["violations"].as_array().unwrap();
    assert_eq!(violations.len(), 1);
    assert_eq!(violations[0]["at"], serde_json::json!(["e", "f", "h"]));

    let (v, code) = json(&["algebra", "--file", "fixtures/s1_bad_grading.alg", "--check-grading"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["grading"]["violations"][0]["at"], serde_json::json!(["x1", "y1"]));

    let (_, code) = json(&["algebra", "schrodinger", "--n", "3", "--check-grading"]);
    assert_eq!(code, 0);
}

#[test]
fn derivation_dimensions() {
    for (args, dim) in [
        (&["derivations", "schrodinger", "--n", "4", "--delta", "1/2", "--emit", "dimension"][..], 1),
        (&["derivations", "sl2", "--delta", "1"][..], 3),
        (&["derivations", "schrodinger_2"][..], 2),
    ] {
        let (v, code) = json(args);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["dimension"], dim, "{args:?}");
    }
}

#[test]
fn s2_derivations_are_recognized() {
    let (v, _) = json(&["derivations", "schrodinger", "--n", "2", "--delta", "1/2"]);
    let dirs: Vec<&str> = v["result"]["basis"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["recognized"]["direction"].as_str().unwrap())
        .collect();
    assert_eq!(dirs, ["ℜ-direction", "id-direction"]);
}

#[test]
fn homlie_reports() {
    let (v, code) = json(&["homlie", "schrodinger", "--n", "2", "--from-derivation", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["map"], serde_json::json!({"s12": {"z": "1"}}));

    let (_, code) = json(&["homlie", "sl2", "--map", "fixtures/id.map"]);
    assert_eq!(code, 0);
}

#[test]
fn swap_ef_violations_match_a_full_triple_scan() {
    let (v, code) = json(&["homlie", "schrodinger", "--n", "2", "--map", "fixtures/swap_ef.map"]);
    assert_eq!(code, 1);
    let s2 = build_schrodinger(2).unwrap();
    let mut phi = LinearMap::zero(9);
    phi.set(1, 0, tpalg::scalar::int(1));
    phi.set(0, 1, tpalg::scalar::int(1));
    let d = s2.dim();
    let mut expected = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let (x, y, z) = (s2.unit(i), s2.unit(j), s2.unit(k));
                let br = |a: &tpalg::Vector, b: &tpalg::Vector| s2.bracket(a, b).unwrap();
                let r = &(&br(&phi.apply(&x).unwrap(), &br(&y, &z)) + &br(&phi.apply(&y).unwrap(), &br(&z, &x)))
                    + &br(&phi.apply(&z).unwrap(), &br(&x, &y));
                if i < j && j < k && !r.is_zero() {
                    let residual: serde_json::Map<String, Value> = r
                        .nonzeros()
                        .map(|(c, val)| (s2.label(c).to_string(), Value::String(format_scalar(val))))
                        .collect();
                    expected.push(serde_json::json!({
                        "at": [s2.label(i), s2.label(j), s2.label(k)],
                        "residual": residual,
                    }));
                }
            }
        }
    }
    assert!(!expected.is_empty());
    assert_eq!(v["result"]["violations"], Value::Array(expected));
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["algebra", "nosuch"][..],
        &["algebra", "--file", "fixtures/missing.alg"],
        &["algebra", "schrodinger"],
        &["derivations", "sl2", "--delta", "1/0"],
        &["derivations", "sl2", "--grading", "standard"],
        &["derivations", "sl2", "--grading", "file"],
        &["tp", "sl2"],
        &["tp", "sl2", "--check", "fixtures/witness.prod"],
        &["homlie", "schrodinger", "--n", "2", "--from-derivation", "0"],
        &["homlie", "schrodinger", "--n", "2", "--from-derivation", "3"],
        &["homlie", "sl2", "--map", "fixtures/witness.prod"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["tp", "schrodinger", "--n", "2", "--search", "--format", "json"][..],
        &["derivations", "so", "--n", "3", "--delta", "2", "--format", "text"],
    ] {
        let strip = |o: Output| -> String {
            String::from_utf8(o.stdout).unwrap().lines().filter(|l| !l.contains("timing_ms")).collect()
        };
        assert_eq!(strip(run(args)), strip(run(args)));
    }
}

fn rationals(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::String(s) if parse_scalar(s).is_ok() => out.push(s.clone()),
        Value::Array(a) => a.iter().for_each(|x| rationals(x, out)),
        Value::Object(o) => o.values().for_each(|x| rationals(x, out)),
        _ => {}
    }
}

#[test]
fn report_rationals_round_trip() {
    let mut found = Vec::new();
    for args in [
        &["derivations", "heisenberg", "--n", "1", "--delta", "-3/4"][..],
        &["derivations", "sl2", "--delta", "1"],
        &["algebra", "schrodinger", "--n", "3", "--show"],
    ] {
        let (v, _) = json(args);
        rationals(&v["result"], &mut found);
    }
    assert!(found.iter().any(|s| s.contains('/')) || found.len() > 10);
    for s in found {
        assert_eq!(format_scalar(&parse_scalar(&s).unwrap()), s);
    }
}
