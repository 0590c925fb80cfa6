use std::process::{Command, Output};

use serde_json::Value;

fn mstd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mstd")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = mstd(&all);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap()
}

#[test]
fn eval_prints_set_and_cardinality() {
    let o = mstd(&["eval", "A+A", "--set", "A=0,1,3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0,1,2,3,4,6\ncardinality 6\n");
    let v = json(&["eval", "3A−2A", "--set", "A={0,1,3}"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["cardinality"], 16);
}

#[test]
fn construct_generalized_has_gap_one() {
    let v = json(&["construct", "generalized", "--pairs", "4,0,3,1"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["claims"][0]["gap"], 1);
    assert_eq!(v["claims"][0]["lhs"], serde_json::json!([4, 0]));
    let set: Vec<i64> = serde_json::from_value(v["set"].clone()).unwrap();
    assert_eq!(set[0], 0);
}

#[test]
fn large_constructions_report_a_null_set() {
    let v = json(&["construct", "simultaneous", "--k", "4", "--pairs", "2,2", "3,1", "4,0"]);
    assert!(v["set"].is_null());
    assert_eq!(v["verified_by"], "certified-product");
    assert!(v["expansion"]["digits"].as_array().unwrap().len() > 1);
}

#[test]
fn verify_suites_exit_zero() {
    for args in [
        vec!["verify", "--lemma", "xLyR", "--k", "2..6", "--xy", "0..4"],
        vec!["verify", "--lemma", "basexp", "--trials", "10", "--seed", "3"],
        vec!["verify", "--lemma", "gap-one", "--k", "2..4"],
        vec!["verify", "--lemma", "deficits", "--k", "2", "--m", "3"],
    ] {
        let o = mstd(&args);
        assert!(o.status.success(), "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).contains(" 0 failed"));
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(mstd(&["eval", "2A+"]).status.code(), Some(2));
    assert_eq!(mstd(&["eval", "A+B", "--set", "A=0,1"]).status.code(), Some(2));
    assert_eq!(mstd(&["compare", "--set", "3,1", "--pairs", "2,0"]).status.code(), Some(2));
    assert_eq!(mstd(&["construct", "kgen"]).status.code(), Some(2));
    assert_eq!(mstd(&["density", "--config", "x.json", "--n", "5"]).status.code(), Some(2));
    let o = mstd(&["eval", "2A+", "--format", "json"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["error"]["kind"], "parse");
}

#[test]
fn invalid_arbdiff_requests_are_structured_errors() {
    let o = mstd(&["construct", "arbdiff", "--a", "3", "--b", "1", "--c", "2", "--d", "2", "--m", "1", "--ell", "1", "--format", "json"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(v["error"]["kind"], "domain");
}

#[test]
fn lenient_flag_and_file_sets() {
    assert_eq!(mstd(&["compare", "--set", "3,1,0", "--pairs", "2,0"]).status.code(), Some(2));
    assert!(mstd(&["--lenient", "compare", "--set", "3,1,0", "--pairs", "2,0"]).status.success());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    std::fs::write(&path, "[0,2,3,4,7,11,12,14]").unwrap();
    let arg = format!("@{}", path.display());
    let v = json(&["compare", "--set", &arg, "--pairs", "2,0", "1,1"]);
    assert_eq!(v["classification"], "sum_dominant");
    assert_eq!(v["gaps"][0]["gap"], 1);
}

#[test]
fn density_is_reproducible_from_its_seed() {
    let args = ["density", "--n", "30", "--trials", "20000", "--seed", "42"];
    let a = json(&args);
    let b = json(&args);
    assert_eq!(a["result"]["hits"], b["result"]["hits"]);
    assert_eq!(a["config_hash"], b["config_hash"]);
    assert_eq!(a["result"]["seed"], 42);
    assert_eq!(a["config"]["seed"], 42);

    let o = mstd(&["density", "--n", "20", "--trials", "100"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("seed: "));
}

#[test]
fn density_config_file_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(&path, r#"{"n": 8, "predicate": "sum-dominant", "trials": 0, "sweep": [8, 15]}"#).unwrap();
    let o = mstd(&["density", "--config", path.to_str().unwrap(), "--format", "json"]);
    assert!(o.status.success());
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["result"]["count"], 0);
    assert_eq!(lines[1]["result"]["count"], 4);
}

#[test]
fn enumerate_and_stabilize() {
    let v = json(&["enumerate", "--n", "15"]);
    assert_eq!(v["count"]["count"], 4);
    let v = json(&["stabilize", "--set", "0,1,3", "--horizon"]);
    assert_eq!(v["stabilization"]["slope"], 3);
    assert!(v["horizon"]["k0"].as_u64().unwrap() >= 1);
}

#[test]
fn embed_requires_a_sum_dominant_seed() {
    assert_eq!(mstd(&["embed", "--set", "0,1,3", "--seed", "1"]).status.code(), Some(2));
    let v = json(&["embed", "--set", "0,2,3,4,7,11,12,14", "--trials", "500", "--seed", "1"]);
    assert_eq!(v["meets_floor"], true);
}
