use std::process::{Command, Output};

use serde_json::Value;

fn laumon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_laumon"))
        .args(args)
        .env_remove("LAUMON_TIME_BUDGET")
        .output()
        .expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn summary(out: &Output) -> Value {
    lines(out).pop().unwrap()
}

#[test]
fn enumerate_lists_points_and_checks_kostant() {
    let out = laumon(&["enumerate", "--n", "3", "--degree", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let ls = lines(&out);
    assert_eq!(ls.iter().filter(|l| l.get("point").is_some()).count(), 2);
    assert!(ls.iter().any(|l| l["name"] == "kostant-count" && l["status"] == "pass"));
    let s = summary(&out);
    assert_eq!(s["summary"]["fail"], 0);
    assert_eq!(s["version"], env!("CARGO_PKG_VERSION"));

    let out = laumon(&["enumerate", "--n", "2", "--degree", "5"]);
    assert_eq!(lines(&out).iter().filter(|l| l.get("point").is_some()).count(), 1);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(laumon(&["enumerate", "--n", "1", "--degree", ""]).status.code(), Some(2));
    assert_eq!(laumon(&["enumerate", "--n", "3", "--degree", "1"]).status.code(), Some(2));
    assert_eq!(laumon(&["verify", "--n", "3", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(laumon(&["verify", "--n", "3", "--suite", "mrak", "--i", "3"]).status.code(), Some(2));
}

#[test]
fn characters_pass_oracle_with_dimension() {
    let out = laumon(&["characters", "--n", "3", "--degree", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    for l in lines(&out).iter().filter(|l| l.get("tangent").is_some()) {
        assert_eq!(l["dimension"], "4");
    }
    let out = laumon(&["characters", "--n", "2", "--degree", "0"]);
    let first = &lines(&out)[0];
    assert_eq!(first["tangent"], serde_json::json!([]));
}

#[test]
fn verify_full_n2_passes_and_is_deterministic() {
    let args = ["verify", "--suite", "full", "--n", "2", "--box", "4", "--seed", "1", "--trials", "3"];
    let a = laumon(&args);
    let b = laumon(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(summary(&a)["complete"], true);
}

#[test]
fn verify_mrak_and_toda_examples() {
    let out = laumon(&["verify", "--suite", "mrak", "--n", "4", "--i", "3", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let out = laumon(&["verify", "--suite", "toda", "--n", "3", "--box", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exhausted_budget_exits_3_with_partial_report() {
    let out = Command::new(env!("CARGO_BIN_EXE_laumon"))
        .args(["verify", "--suite", "full", "--n", "2", "--box", "1"])
        .env("LAUMON_TIME_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(summary(&out)["complete"], false);
}

#[test]
fn whittaker_and_toda_emit_data() {
    let out = laumon(&["whittaker", "--n", "2", "--degree", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let first = &lines(&out)[0];
    for key in ["k", "w", "pairing", "rgamma"] {
        assert!(first.get(key).is_some(), "{key}");
    }
    let out = laumon(&["toda", "--n", "2", "--box", "3", "--series", "I", "--operator", "S"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(lines(&out).iter().any(|l| l.get("series").is_some()));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("laumon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.jsonl");
    let out = laumon(&["enumerate", "--n", "3", "--degree", "2,1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("\"point\"")).count(), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
