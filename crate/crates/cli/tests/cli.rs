use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bubblelab")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = bin(args);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (v, out.status.code().unwrap())
}

#[test]
fn inverted_family_willmore_energy() {
    let (v, code) = json(&["energies", "--model", "inverted:psi-mu", "--mu", "0.3", "--tol", "1e-3", "--no-timestamp"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["config"]["model"], "inverted:psi-mu");
    assert_eq!(v["config"]["mu"], 0.3);
    let w = v["result"]["surface"]["willmore"].as_f64().unwrap();
    assert!((w - 16.0).abs() < 0.08, "W/pi = {w}");
}

#[test]
fn chen_gackstatter_support_residue() {
    let (v, code) = json(&["residue", "--model", "chen-gackstatter", "--probe", "support", "--no-timestamp"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["alpha"], 2);
    assert_eq!(v["result"]["probe"], "support");
}

#[test]
fn plane_energies_vanish() {
    let (v, code) = json(&["energies", "--model", "plane", "--no-timestamp", "--assert"]);
    assert_eq!(code, 0);
    for k in ["willmore", "total_curv", "tracefree", "gauss_integral"] {
        assert_eq!(v["result"]["surface"][k].as_f64().unwrap(), 0.0, "{k}");
    }
}

#[test]
fn output_is_deterministic_without_timestamps() {
    let args = ["energies", "--model", "inverted:lopez", "--no-timestamp"];
    let a = bin(&args);
    let b = bin(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v.get("timestamp").is_none());
    assert!(v["result"]["surface"].get("seconds").is_none());
    let (timed, _) = json(&["energies", "--model", "plane"]);
    assert!(timed["timestamp"].is_u64());
}

#[test]
fn assert_turns_failed_checks_into_exit_two() {
    let args = ["blowup", "--expect-order", "1", "--order-tol", "0.2", "--no-timestamp"];
    let (v, code) = json(&args);
    // without --assert the numbers are reported and the run succeeds
    assert_eq!(code, 0);
    assert_eq!(v["passed"], false);
    let out = bin(&[&args[..], &["--assert"]].concat());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["energies", "--model", "torus"],
        vec!["energies", "--model", "psi-mu"],
        vec!["energies", "--model", "lopez", "--mu", "0.3"],
        vec!["energies", "--model", "plane", "--tol", "0"],
        vec!["frobnicate"],
        vec!["energies", "--model", "plane", "--p", "1,2"],
    ] {
        let out = bin(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "model = \"inverted:psi-mu\"\nmu = 0.3\np = [4.0, 0.0, 1.0]\nformat = \"csv\"\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let out = bin(&["multiplicity", "--config", cfg, "--no-timestamp"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("radius,circle_mean\n"));
    // mu from the file conflicts with the overriding model
    let out = bin(&["multiplicity", "--config", cfg, "--model", "enneper"]);
    assert_eq!(out.status.code(), Some(1));
    let out = bin(&["multiplicity", "--config", cfg, "--format", "json", "--no-timestamp"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["format"], "json");
    assert_eq!(v["config"]["mu"], 0.3);
}

#[test]
fn bad_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "modle = \"plane\"\n").unwrap();
    let out = bin(&["energies", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn report_and_mesh_files() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let obj = dir.path().join("m.obj");
    let out = bin(&[
        "mesh", "--model", "enneper", "--obj", obj.to_str().unwrap(), "--rings", "4", "--sectors", "8",
        "--output", report.to_str().unwrap(), "--no-timestamp",
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["result"]["vertices"], 40);
    assert_eq!(v["result"]["triangles"], 64);
    let text = std::fs::read_to_string(&obj).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 40);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 64);
}

#[test]
fn verify_certifies_everything() {
    let (v, code) = json(&["verify", "--assert", "--no-timestamp"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().len() >= 10);
    // a non-integer family constant cannot be certified exactly
    assert_eq!(bin(&["verify", "--a", "2.5"]).status.code(), Some(1));
}

#[test]
fn minimal_residual_is_exactly_zero() {
    let (v, code) = json(&["residual", "--model", "psi-mu", "--mu", "0.3", "--assert", "--no-timestamp"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["residual"][0], 0.0);
    assert!(v["result"]["ratio"].is_null());
}

#[test]
fn g2_matches_closed_form() {
    let (v, code) = json(&["g2", "--assert", "--no-timestamp"]);
    assert_eq!(code, 0);
    assert!((v["result"]["g2"].as_f64().unwrap() - 189.072_720_129_234).abs() < 1e-6);
}
