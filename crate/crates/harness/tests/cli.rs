use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use vcsp_core::format::landscape_from_json;
use vcsp_core::search::SearchTrace;

fn vcsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vcsp"))
        .args(args)
        .env_remove("VCSP_WORKERS")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = vcsp(args);
    assert!(
        out.status.success(),
        "vcsp {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).expect("json output")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const CONFIG: &str = r#"{
    "name": "cli",
    "instances": [
        {"source": "haken-luby", "g": 1},
        {"source": "random", "seed": 5, "count": 2,
         "spec": {"n": 8, "edge_density": 0.3, "weight_bound": 50, "filter": "oriented",
                  "tie_free": true, "tree": true}}
    ],
    "rules": [{"rule": "random-ascent"}, {"rule": "jump-to-best"}, {"rule": "history", "kind": "zadeh"}],
    "base_seed": 11,
    "trials": 40
}"#;

#[test]
fn gen_analyze_search_replay() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("hl.json");
    ok(&["gen", "--out", s(&inst), "haken-luby", "--g", "2"]);

    let a = json(&["analyze", "--instance", s(&inst)]);
    assert_eq!(a["label"], "oriented");
    assert!(a["conditionally_smooth"]["height"].as_u64().unwrap() > 0);

    let o = json(&["oracle", "semismooth", "--instance", s(&inst)]);
    assert_eq!(o["semismooth"], true);

    let trace_path = dir.path().join("t.jsonl");
    let r = json(&[
        "search",
        "--rule",
        "random-ascent",
        "--instance",
        s(&inst),
        "--start",
        "random:3",
        "--seed",
        "9",
        "--trace-out",
        s(&trace_path),
    ]);
    assert_eq!(r["terminated"], "peak");

    let (f, _) = landscape_from_json(&fs::read_to_string(&inst).unwrap()).unwrap();
    let trace = SearchTrace::from_json_lines(&fs::read_to_string(&trace_path).unwrap()).unwrap();
    assert_eq!(trace.num_steps() as u64, r["steps"].as_u64().unwrap());
    assert_eq!(trace.replay(&f).unwrap().to_string(), r["final"]);

    // same seed, same run
    let again = json(&[
        "search",
        "--rule",
        "random-ascent",
        "--instance",
        s(&inst),
        "--start",
        "random:3",
        "--seed",
        "9",
    ]);
    assert_eq!(again, r);
}

#[test]
fn matousek_files_search_but_do_not_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    ok(&["gen", "--out", s(&m), "matousek", "--n", "6", "--seed", "2"]);
    assert!(!vcsp(&["analyze", "--instance", s(&m)]).status.success());
    let r = json(&["search", "--rule", "random-facet", "--instance", s(&m)]);
    assert_eq!(r["final"], "000000");
}

#[test]
fn bench_csv_is_independent_of_workers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, CONFIG).unwrap();
    let mut csvs = Vec::new();
    for w in ["1", "4"] {
        let csv = dir.path().join(format!("w{w}.csv"));
        let out = Command::new(env!("CARGO_BIN_EXE_vcsp"))
            .args([
                "bench",
                "--config",
                s(&cfg),
                "--csv",
                s(&csv),
                "--no-timestamp",
            ])
            .env("VCSP_WORKERS", w)
            .output()
            .unwrap();
        assert!(out.status.success());
        csvs.push(fs::read(&csv).unwrap());
    }
    assert_eq!(csvs[0], csvs[1]);
    assert!(String::from_utf8_lossy(&csvs[0]).starts_with("instance_id,family,n,"));

    let stamped = dir.path().join("stamped.csv");
    ok(&["bench", "--config", s(&cfg), "--csv", s(&stamped)]);
    let text = fs::read_to_string(&stamped).unwrap();
    let (first, rest) = text.split_once('\n').unwrap();
    assert!(first.starts_with("# generated at "));
    assert_eq!(rest.as_bytes(), csvs[0]);
}

#[test]
fn bench_fails_when_a_bound_fails() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    // a one-step cap leaves most runs short of the peak
    let capped = CONFIG.replace("\"trials\": 40", "\"trials\": 40, \"cap\": 1");
    fs::write(&cfg, capped).unwrap();
    let out = vcsp(&["bench", "--config", s(&cfg)]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("violated"));
}

#[test]
fn bad_input_is_an_error() {
    assert!(
        !vcsp(&["search", "--rule", "nonsense", "--instance", "x.json"])
            .status
            .success()
    );
    assert!(!vcsp(&["analyze", "--instance", "/no/such/file.json"])
        .status
        .success());
}
