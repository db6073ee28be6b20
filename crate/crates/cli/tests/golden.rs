use std::process::{Command, Output};

use serde_json::Value;

fn qcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcoh"))
        .args(args)
        .env_remove("QCOH_FORMAT")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = qcoh(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn ring_prints_quantum_relation() {
    let out = qcoh(&["ring", "cpn:2", "--quantum"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("R1 = p^3 - q"));
    let classical = stdout(&qcoh(&["ring", "cpn:2"]));
    assert!(classical.contains("R1 = p^3\n"));
}

#[test]
fn lagrangian_check_json() {
    let v = json(&["lagrangian-check", "hirzebruch:1"]);
    assert_eq!(v["schema"], "qcoh/1");
    assert_eq!(v["L1"], true);
    assert_eq!(v["L2"], false);
    assert_eq!(v["bracket"], "q2*R2");
    let flag = json(&["lagrangian-check", "--space", "flag3"]);
    assert_eq!(flag["L2"], true);
    assert_eq!(flag["bracket"], "0");
}

#[test]
fn json_shorthand_and_env_format() {
    let a = qcoh(&["lagrangian-check", "hirzebruch:1", "--json"]);
    let b = Command::new(env!("CARGO_BIN_EXE_qcoh"))
        .args(["lagrangian-check", "hirzebruch:1"])
        .env("QCOH_FORMAT", "json")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["command"], "lagrangian-check");
}

#[test]
fn residue_report() {
    let v = json(&["lg", "residue", "--space", "gr:2:4", "--T", "c1^4", "--q", "1"]);
    assert_eq!(v["oracle"], 2);
    assert_eq!(v["match"], true);
    assert_eq!(v["roots"].as_array().unwrap().len(), 6);
    assert_eq!(v["hessians"].as_array().unwrap().len(), 6);
    assert!((v["sum"][0].as_f64().unwrap().abs() - 2.0).abs() < 1e-6);
}

#[test]
fn toda_trajectory() {
    let v = json(&["toda", "integrate", "--a", "1,1", "--b", "0.5,0,-0.5", "--t-end", "10", "--dt", "1e-3"]);
    assert_eq!(v["steps"], 10000);
    assert!(v["drift"]["g"].as_f64().unwrap() <= 1e-8);
    assert!(v["drift"]["h"].as_f64().unwrap() <= 1e-8);
    assert_eq!(v["states"].as_array().unwrap().len(), 11);
    let id = json(&["toda", "identify"]);
    assert_eq!(id["matching_signs"], serde_json::json!([[-1, -1]]));
}

#[test]
fn genfun_reports() {
    let v = json(&["genfun", "annihilate", "--space", "cpn:2", "--order", "12"]);
    assert_eq!(v["order"], 12);
    assert_eq!(v["reliable_order"], 12);
    assert_eq!(v["residual_terms"], 0);
    let b = json(&["genfun", "build", "--space", "flag3", "--order", "9"]);
    assert_eq!(b["order"], 9);
    assert!(b["residual_terms"].as_u64().unwrap() > 0);
}

#[test]
fn schubert_and_products() {
    let v = json(&["schubert", "product", "gr:2:4", "--left", "[2,2]", "--right", "[1]"]);
    assert_eq!(v["product"], "q*[1,0]");
    assert_eq!(v["left"], "[2,2]");
    let t = stdout(&qcoh(&["product-table", "flag3"]));
    assert!(t.contains("a * a = a^2 + q1\n"), "{t}");
}

#[test]
fn spectrum_with_explicit_q() {
    let out = qcoh(&["spectrum", "cpn:2", "--q", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let bad = qcoh(&["spectrum", "flag3", "--q", "1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_all_passes_with_fixture_lines() {
    let out = qcoh(&["verify-all"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().filter(|l| l.starts_with("PASS ")).count() >= 60);
    assert!(!text.contains("FAIL "));
}

#[test]
fn failing_check_exits_one() {
    let out = qcoh(&["--integrator-drift", "1e-20", "toda", "integrate"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(
        &qcoh(&["--json", "--integrator-drift", "1e-20", "toda", "integrate"]).stdout,
    )
    .unwrap();
    assert_eq!(v["overrides"]["integrator_drift"], 1e-20);
    assert_eq!(v["pass"], false);
}

#[test]
fn usage_errors_exit_two() {
    let unknown = qcoh(&["ring", "moon:3"]);
    assert_eq!(unknown.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&unknown.stderr);
    assert!(msg.contains("cpn:<n>") && msg.contains("hirzebruch:<k>"), "{msg}");
    assert_eq!(qcoh(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qcoh(&["ring", "hirzebruch:2", "--quantum"]).status.code(), Some(2));
    assert_eq!(qcoh(&["ring"]).status.code(), Some(2));
    assert_eq!(qcoh(&["lg", "residue", "flag3"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify-all"][..],
        &["lg", "residue", "gr:2:4"][..],
        &["spectrum", "hirzebruch:1"][..],
        &["product-table", "gr:2:4"][..],
    ] {
        let a = json(args);
        let b = json(args);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap(), "{args:?}");
        let raw1 = qcoh(&[&["--json"][..], args].concat()).stdout;
        let raw2 = qcoh(&[&["--json"][..], args].concat()).stdout;
        assert_eq!(raw1, raw2, "{args:?}");
    }
}

#[test]
fn presentation_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("qcoh-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("flag3.pres");
    let out = qcoh(&["ring", "flag3", "--quantum", "--presentation", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let from_file = json(&["product-table", "--file", path.to_str().unwrap()]);
    let built = json(&["product-table", "flag3"]);
    assert_eq!(from_file["products"], built["products"]);
    std::fs::remove_dir_all(&dir).ok();
}
