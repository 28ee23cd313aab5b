use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hyperslice(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperslice"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_default_passes_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let first = hyperslice(&["verify", "--out", path(&out)]);
    assert_eq!(code(&first), 0, "{}", String::from_utf8_lossy(&first.stderr));
    let a = std::fs::read(&out).unwrap();
    assert_eq!(code(&hyperslice(&["verify", "--out", path(&out)])), 0);
    let b = std::fs::read(&out).unwrap();
    assert_eq!(a, b);

    let report: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["config"]["seed"], 42);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn verify_exit_codes() {
    let tight = hyperslice(&["verify", "--structure", "paravector", "--n", "3", "--tol", "1e-30"]);
    assert_eq!(code(&tight), 1);
    let report = stdout_json(&tight);
    assert!(report["checks"].as_array().unwrap().iter().any(|c| c["pass"] == false));

    assert_eq!(code(&hyperslice(&["verify", "--structure", "paravector", "--n", "9"])), 2);
    assert_eq!(code(&hyperslice(&["verify", "--structure", "quaternion", "--n", "3"])), 2);
    assert_eq!(code(&hyperslice(&["verify", "--rmax", "1.5"])), 2);
    assert_eq!(code(&hyperslice(&["verify", "--structure", "octonion"])), 2);
    assert_eq!(code(&hyperslice(&["verify", "--degree", "1"])), 2);
}

#[test]
fn eval_identity_echoes_point() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("id.json");
    let gen = hyperslice(&["generate", "catalog", "--entry", "identity", "--degree", "4", "--out", path(&f)]);
    assert_eq!(code(&gen), 0);
    let o = hyperslice(&["eval", path(&f), "0", "0.3", "0.4", "0"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["value"]["coeffs"], serde_json::json!([0.0, 0.3, 0.4, 0.0]));
}

#[test]
fn eval_koebe_at_half() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("k.json");
    let gen = hyperslice(&["generate", "koebe", "--theta", "0", "--axis", "e1", "--degree", "256", "--out", path(&f)]);
    assert_eq!(code(&gen), 0);
    let series: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    for k in [0usize, 1, 7, 256] {
        assert_eq!(series["coefficients"][k][0], k as f64);
    }

    let v = stdout_json(&hyperslice(&["eval", path(&f), "0.5", "0", "0", "0"]));
    assert!((v["value"]["coeffs"][0].as_f64().unwrap() - 2.0).abs() < 1e-12);
    let v = stdout_json(&hyperslice(&["eval", path(&f), "-0.5", "0", "0", "0"]));
    assert!((v["norm"].as_f64().unwrap() - 2.0 / 9.0).abs() < 1e-12);

    let direct = stdout_json(&hyperslice(&["eval", path(&f), "0.2", "0.1", "0.3", "-0.2"]));
    let rep = stdout_json(&hyperslice(&[
        "eval", path(&f), "0.2", "0.1", "0.3", "-0.2", "--representation", "--axis", "e2",
    ]));
    for k in 0..4 {
        let (a, b) = (direct["value"]["coeffs"][k].as_f64().unwrap(), rep["value"]["coeffs"][k].as_f64().unwrap());
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }

    let far = hyperslice(&["eval", path(&f), "0.97", "0", "0", "0"]);
    assert_eq!(code(&far), 0);
    assert!(String::from_utf8_lossy(&far.stderr).contains("warning"));
    assert_eq!(code(&hyperslice(&["eval", path(&f), "0.1", "0.2"])), 2);
}

#[test]
fn moebius_with_trivial_parameters_is_identity() {
    let o = hyperslice(&["generate", "moebius", "--a", "0", "--u", "1", "--degree", "6"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    let coeffs = v["coefficients"].as_array().unwrap();
    for (k, c) in coeffs.iter().enumerate() {
        let expected = if k == 1 { 1.0 } else { 0.0 };
        assert_eq!(c[0].as_f64().unwrap(), expected);
        assert!(c.as_array().unwrap()[1..].iter().all(|x| x.as_f64().unwrap() == 0.0));
    }
    assert_eq!(code(&hyperslice(&["generate", "moebius", "--a", "0.5+0.9e1", "--u", "1"])), 2);
}

#[test]
fn ext_lifts_complex_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("F.json");
    std::fs::write(&f, r#"{"degree": 2, "coefficients": [[0, 0], [1, 0], [0, 1]]}"#).unwrap();
    let o = hyperslice(&["generate", "ext", "--coeffs", path(&f), "--axis", "e2"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["coefficients"][2], serde_json::json!([0.0, 0.0, 1.0, 0.0]));
    assert_eq!(code(&hyperslice(&["generate", "ext", "--coeffs", path(&f), "--axis", "1"])), 2);
}

#[test]
fn catalog_lists_entries() {
    let o = hyperslice(&["generate", "catalog", "--degree", "8"]);
    assert_eq!(code(&o), 0);
    let names: Vec<String> = stdout_json(&o)
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap().to_owned())
        .collect();
    assert!(names.contains(&"koebe_theta0".to_owned()));
    assert!(names.contains(&"moebius".to_owned()));
    assert_eq!(code(&hyperslice(&["generate", "catalog", "--entry", "nope"])), 2);
}
