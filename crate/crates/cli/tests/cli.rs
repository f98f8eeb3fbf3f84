use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_springer-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn check<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn vertical_tiles_suite_passes() {
    let out = run(&["verify", "--suite", "vertical-tiles", "--type", "D", "--n", "3", "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema"], "springer-lab/v1");
    assert_eq!(r["passed"], true);
    assert!(!r["anchor"].as_str().unwrap().is_empty());
    assert_eq!(check(&r, "vertical-tiles")["passed"], true);
}

#[test]
fn classified_forced_fiber() {
    let out = run(&["fiber", "--type", "A", "--n", "2", "--r", "1", "--p", "2", "--classify"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["classes"], 1);
    assert!(r["result"]["fiber_count p=2"].as_u64().unwrap() > 0);
}

#[test]
fn fiber_pointcount_with_holdout() {
    let out = run(&[
        "pointcount", "--target", "fiber", "--type", "A", "--n", "4", "--r", "2", "--primes", "2,3,5,7,11", "--holdout", "13",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["degree"], 2);
    assert_eq!(r["result"]["polynomial"], "1 + 3q + 2q^2");
    assert_eq!(check(&r, "holdout")["passed"], true);
    assert_eq!(check(&r, "dimension")["passed"], true);
    assert_eq!(r["samples"][0]["samples"].as_array().unwrap().len(), 6);
}

#[test]
fn schubert_pointcount_matches_bruhat_interval() {
    let out = run(&["pointcount", "--target", "schubert:(1,2,1)", "--n", "3", "--primes", "2,3,5,7", "--holdout", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["polynomial"], "1 + 2q + 2q^2 + q^3");
    assert_eq!(check(&r, "matches-bruhat-interval")["passed"], true);
}

#[test]
fn component_and_xhat_targets() {
    let out = run(&["pointcount", "--target", "component:1-3", "--n", "4", "--r", "2", "--primes", "2,3,5"]);
    assert_eq!(report(&out)["result"]["polynomial"], "q + q^2");
    let out = run(&["pointcount", "--target", "xhat", "--tableau", "1-3", "--n", "4", "--r", "2", "--primes", "2,3,5"]);
    assert_eq!(report(&out)["result"]["polynomial"], "1 + 2q + q^2");
    let out = run(&["pointcount", "--target", "fiber", "--type", "D", "--n", "2", "--r", "1", "--primes", "3,5", "--holdout", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["degree"], 1);
}

#[test]
fn tableaux_listing() {
    let r = report(&run(&["tableaux", "--type", "A", "--n", "4", "--r", "2"]));
    assert_eq!(r["result"]["count"], 2);
    let ids: Vec<&str> = r["result"]["tableaux"].as_array().unwrap().iter().map(|t| t["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["1-2", "1-3"]);
    let r = report(&run(&["tableaux", "--type", "D", "--n", "3", "--r", "1"]));
    assert_eq!(r["result"]["count"], 2);
}

#[test]
fn suites_pass_at_small_scale() {
    for args in [
        ["verify", "--suite", "coro-comp", "--type", "A", "--n", "4", "--r", "1"],
        ["verify", "--suite", "descrip", "--type", "D", "--n", "2", "--r", "1"],
        ["verify", "--suite", "fibration", "--type", "A", "--n", "4", "--r", "2"],
        ["verify", "--suite", "subword", "--type", "A", "--n", "4", "--r", "2"],
        ["verify", "--suite", "birational", "--type", "A", "--n", "3", "--r", "1"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn words_emit_suffix_extension() {
    let out = run(&["words", "--type", "A", "--n", "4", "--r", "2", "--tableau", "1-3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let w: Vec<u64> = serde_json::from_value(r["result"]["w_word"].clone()).unwrap();
    let v: Vec<u64> = serde_json::from_value(r["result"]["v_word"].clone()).unwrap();
    assert!(v.ends_with(&w));
}

#[test]
fn assertion_failure_exits_one_with_witness() {
    let out = run(&["words", "--type", "A", "--n", "5", "--r", "2", "--tableau", "2-3"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["passed"], false);
    assert!(check(&r, "words")["witness"].as_str().unwrap().contains("Bruhat maximum"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["fiber", "--type", "A", "--n", "3", "--r", "2", "--p", "2"],
        vec!["fiber", "--type", "D", "--n", "2", "--r", "1", "--p", "2"],
        vec!["fiber", "--type", "B", "--n", "2", "--r", "1", "--p", "3"],
        vec!["pointcount", "--target", "nowhere", "--n", "3", "--primes", "2"],
        vec!["pointcount", "--target", "xhat", "--n", "3", "--r", "1", "--primes", "2"],
        vec!["verify", "--suite", "descrip", "--type", "A", "--n", "3", "--r", "1"],
        vec!["fiber", "--type", "A", "--n", "3", "--r", "1", "--p", "4"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn reports_are_deterministic_apart_from_run_info() {
    let args = ["verify", "--suite", "coro-comp", "--type", "A", "--n", "4", "--r", "2", "--jobs", "2"];
    let strip = |out: Output| {
        let mut r = report(&out);
        r.as_object_mut().unwrap().remove("run");
        serde_json::to_string(&r).unwrap()
    };
    assert_eq!(strip(run(&args)), strip(run(&args)));
}

#[test]
fn out_dir_receives_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let out = run(&["pointcount", "--target", "fiber", "--n", "3", "--r", "1", "--primes", "2,3", "--holdout", "5", "--out", path]);
    assert_eq!(out.status.code(), Some(0));
    let json = std::fs::read_to_string(dir.path().join("pointcount.json")).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&json).unwrap()["schema"], "springer-lab/v1");
    let samples = std::fs::read_to_string(dir.path().join("pointcount-samples.csv")).unwrap();
    assert_eq!(samples, "label,prime,count\nfiber,2,5\nfiber,3,7\nfiber,5,11\n");
    let checks = std::fs::read_to_string(dir.path().join("pointcount-checks.csv")).unwrap();
    assert!(checks.starts_with("name,mode,passed,count,witness\n"));
}
