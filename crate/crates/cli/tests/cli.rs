use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_picardcm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn write_temp(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn factors(v: &Value) -> Vec<(String, String)> {
    v["factors"]
        .as_object()
        .unwrap()
        .iter()
        .map(|(k, e)| (k.clone(), e.as_str().unwrap().to_string()))
        .collect()
}

fn pairs(x: &[(&str, &str)]) -> Vec<(String, String)> {
    x.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

#[test]
fn bound_example_one() {
    let out = bin(&["--json", "bound", "--field-poly", "1,-2,-1", "--mu", "3,0,-2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(factors(&v["N_mu"]), pairs(&[("13", "3"), ("2", "84"), ("7", "3")]));
    assert_eq!(v["t2"], "19");
    assert_eq!(v["mu_minpoly"], serde_json::json!(["-1", "-9", "1", "1"]));
    let t = &v["tuples"][0];
    for key in ["m", "x", "a", "n", "survived", "reason"] {
        assert!(t.get(key).is_some(), "tuple lacks {key}");
    }
}

#[test]
fn bound_example_two_and_determinism() {
    let args = ["--json", "bound", "--field-poly", "-1,-4,-1", "--mu", "5,2,-2"];
    let a = bin(&args);
    let b = bin(&args);
    assert_eq!(a.stdout, b.stdout);
    let mut serial = args.to_vec();
    serial.extend(["--parallel", "1"]);
    let mut wide = args.to_vec();
    wide.extend(["--parallel", "4"]);
    assert_eq!(bin(&serial).stdout, a.stdout);
    assert_eq!(bin(&wide).stdout, a.stdout);
    assert_eq!(
        factors(&json_of(&a)["N_mu"]),
        pairs(&[("13", "3"), ("2", "153"), ("31", "3"), ("47", "3"), ("5", "18")])
    );
}

#[test]
fn bound_validation_errors() {
    let out = bin(&["--json", "bound", "--field-poly", "1,-2,-1", "--mu", "3,0,0"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    assert_eq!(v["error"], "degenerate_mu");
    assert_eq!(v["message"], "mu generates no cubic field");

    let out = bin(&["--json", "bound", "--field-poly", "1,-2,-1", "--mu", "0,1,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"], "mu_not_in_order");

    let out = bin(&["bound", "--field-poly", "1,-2,-1", "--mu", "3,0,-2", "--alt-isogeny"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not implemented"));

    let out = bin(&["bound", "--field-poly", "1,-2,-1", "--mu", "3,0,-2", "--t2", "20"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(bin(&["bound", "--field-poly", "1,-2,-1", "--mu", "3,0,-2", "--t2", "19"]).status.code(), Some(0));

    let out = bin(&["bound", "--field-poly", "1,-2", "--mu", "3,0,-2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bound_with_order_basis_file() {
    let dir = tempfile::tempdir().unwrap();
    // Z[alpha, zeta] is maximal for this field
    let rows: Vec<Vec<String>> = (0..6)
        .map(|i| (0..6).map(|j| if i == j { "1".to_string() } else { "0".to_string() }).collect())
        .collect();
    let body = serde_json::json!({ "order_basis": rows }).to_string();
    let path = write_temp(&dir, "order.json", &body);
    let with = bin(&["--json", "bound", "--field-poly", "1,-2,-1", "--mu", "3,0,-2", "--order-basis", path.to_str().unwrap()]);
    let without = bin(&["--json", "bound", "--field-poly", "1,-2,-1", "--mu", "3,0,-2"]);
    assert_eq!(with.status.code(), Some(0));
    assert_eq!(json_of(&with)["N_mu"], json_of(&without)["N_mu"]);

    let bad = write_temp(&dir, "bad.json", r#"{"order_basis": [["1/2","0","0","0","0","0"]]}"#);
    let out = bin(&["bound", "--field-poly", "1,-2,-1", "--mu", "3,0,-2", "--order-basis", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn find_mu_examples() {
    let out = bin(&["--json", "find-mu", "--field-poly", "-1,-4,-1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let c = v["candidates"].as_array().unwrap();
    assert!(!c.is_empty());
    let t2: Vec<i64> = c.iter().map(|x| x["t2"].as_str().unwrap().parse().unwrap()).collect();
    assert!(t2.iter().all(|t| *t <= 67));
    assert!(t2.windows(2).all(|w| w[0] <= w[1]));

    let out = bin(&["--json", "find-mu", "--field-poly", "-1,-4,-1", "--cap", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json_of(&out)["candidates"].as_array().unwrap().is_empty());

    let out = bin(&["find-mu", "--field-poly", "0,-1,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn curve_commands() {
    let dir = tempfile::tempdir().unwrap();
    let curve = write_temp(&dir, "c.json", r#"{"a": "-1274", "b": "24440", "c": "-130975"}"#);
    let c = curve.to_str().unwrap();

    let v = json_of(&bin(&["--json", "invariants", "--curve", c]));
    assert_eq!(v["invariants"]["j1"], "-1529437/441800");
    assert_eq!(factors(&v["denominators"]["den_abs"]), pairs(&[("2", "3"), ("47", "1"), ("5", "1")]));

    let v = json_of(&bin(&["--json", "classify", "--curve", c, "--prime", "47"]));
    assert_eq!(v["case"], "3");
    assert_eq!(v["abar_squared"], "32");
    let v = json_of(&bin(&["--json", "classify", "--curve", c, "--prime", "5"]));
    assert_eq!(v["case"], "2");
    assert_eq!(bin(&["classify", "--curve", c, "--prime", "3"]).status.code(), Some(2));
    assert_eq!(bin(&["classify", "--curve", c, "--prime", "9"]).status.code(), Some(2));

    let singular = write_temp(&dir, "s.json", r#"{"a": "0", "b": "0", "c": "0"}"#);
    assert_eq!(bin(&["invariants", "--curve", singular.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(bin(&["invariants", "--curve", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn classpoly_command() {
    let dir = tempfile::tempdir().unwrap();
    let pts = write_temp(&dir, "p.json", r#"[{"j1": "1", "j2": "1"}, {"j1": "2", "j2": "3"}]"#);
    let v = json_of(&bin(&["--json", "classpoly", "--points", pts.to_str().unwrap()]));
    assert_eq!(v["h1"], serde_json::json!(["2", "-3", "1"]));
    assert_eq!(v["h2hat"], serde_json::json!(["-5", "4"]));
    let dup = write_temp(&dir, "d.json", r#"[{"j1": "1", "j2": "1"}, {"j1": "1", "j2": "3"}]"#);
    assert_eq!(bin(&["classpoly", "--points", dup.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn constant_b_command() {
    let v = json_of(&bin(&["--json", "constant-B", "--field-poly", "1,-2,-1"]));
    assert_eq!(v["b"], "15");
    assert_eq!(v["b10_over_8_approx"], "7.2e10");
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn verify_examples_subsets() {
    let out = bin(&["--json", "verify-examples", "--ids", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!(v["timing_ms"].is_object());
    assert_eq!(v["pass"], true);
    let again = json_of(&bin(&["--json", "verify-examples", "--ids", "1,2"]));
    assert_eq!(without_timing(v.clone()), without_timing(again));
    let checks = v["examples"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "N_mu" && c["pass"] == true));
    assert!(checks.iter().any(|c| c["name"] == "den_abs" && c["pass"] == true));

    for id in ["5", "8"] {
        let out = bin(&["verify-examples", "--ids", id]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
        assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
    }
    assert_eq!(bin(&["verify-examples", "--ids", "10"]).status.code(), Some(2));
}
