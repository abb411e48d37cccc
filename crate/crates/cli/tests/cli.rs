use std::process::{Command, Output};
use std::sync::OnceLock;

use jsonschema::JSONSchema;
use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_locnil"));
    for var in ["LOCNIL_PRIME_BOUND", "LOCNIL_STEP_CAP", "LOCNIL_BIT_CAP", "LOCNIL_TRAP_CAP", "LOCNIL_BUDGET"] {
        cmd.env_remove(var);
    }
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn schema() -> &'static JSONSchema {
    static SCHEMA: OnceLock<JSONSchema> = OnceLock::new();
    SCHEMA.get_or_init(|| {
        let text = include_str!("../schema/report.schema.json");
        let value: Value = serde_json::from_str(text).unwrap();
        JSONSchema::compile(&value).expect("schema compiles")
    })
}

fn validated(doc: &Value) {
    if let Err(errors) = schema().validate(doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:#?}\n{doc:#}");
    }
}

/// Runs with `--json`, checks the schema and that the process exit code
/// matches the one in the document.
fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = run(&full);
    let code = out.status.code().unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    validated(&doc);
    assert_eq!(doc["exit_code"], code, "{args:?}");
    (code, doc)
}

#[test]
fn certify_strictly_local_translation() {
    let (code, doc) = json(&["certify", "-u", "x+1", "-r", "1", "--primes", "20"]);
    assert_eq!(code, 0);
    assert_eq!(doc["command"], "certify");
    assert_eq!(doc["result"]["status"]["kind"], "consistent_up_to");
    let certs = doc["result"]["certificates"].as_array().unwrap();
    let pairs: Vec<(u64, u64)> = certs.iter().map(|c| (c["p"].as_u64().unwrap(), c["m_p"].as_u64().unwrap())).collect();
    assert_eq!(pairs, vec![(2, 1), (3, 2), (5, 4), (7, 6), (11, 10), (13, 12), (17, 16), (19, 18)]);
}

#[test]
fn certify_refutation_exits_2() {
    let (code, doc) = json(&["certify", "-u", "4x-2", "-r", "1", "--primes", "20"]);
    assert_eq!(code, 2);
    assert_eq!(doc["result"]["status"], serde_json::json!({"kind": "refuted_at", "p": 5}));
    let last = doc["result"]["certificates"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["kind"], "refuted");
    assert_eq!(last["cycle"], serde_json::json!([1, 2]));
}

#[test]
fn certify_all_keeps_going() {
    let (code, doc) = json(&["certify", "-u", "4x-2", "-r", "1", "--primes", "20", "--all"]);
    assert_eq!(code, 2);
    assert_eq!(doc["result"]["status"]["p"], 5);
    assert_eq!(doc["result"]["certificates"].as_array().unwrap().len(), 8);
}

#[test]
fn classify_with_excluded_prime() {
    let (code, doc) = json(&["classify", "-u", "-2x-1", "-r", "1", "-A", "2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["result"], "InL");
    assert_eq!(doc["result"]["subclass"]["kind"], "strictly_local");
    assert_eq!(doc["citations"], serde_json::json!(["Thm3.4"]));
}

#[test]
fn classify_undecidable_exits_3() {
    let (code, doc) = json(&["classify", "-u", "x^2-2", "-r", "3", "-A", "2"]);
    assert_eq!(code, 3);
    assert_eq!(doc["result"]["decidable"], false);
    assert!(doc["result"]["result"].is_null());
}

#[test]
fn classify_accepts_coefficient_lists_and_negative_base() {
    let (_, a) = json(&["classify", "-u", "-2,-4", "-r", "-6"]);
    let (_, b) = json(&["classify", "-u", "-4x-2", "-r", "-6"]);
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["inputs"]["r"], "-6");
}

#[test]
fn orbit_outcomes() {
    let (code, doc) = json(&["orbit", "-u", "x^2-1", "-r", "0"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["outcome"]["kind"], "reached_zero");
    assert_eq!(doc["result"]["outcome"]["index"], 2);

    let (code, doc) = json(&["orbit", "-u", "x^2-2", "-r", "2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["outcome"]["kind"], "cycle");

    // the translation closed form needs no steps at all
    let (code, doc) = json(&["orbit", "-u", "x+1", "-r", "-1000000", "--step-cap", "1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["outcome"]["index"], 1_000_000);

    let (code, doc) = json(&["orbit", "-u", "x^2-1", "-r", "0", "--step-cap", "1"]);
    assert_eq!(code, 3);
    assert_eq!(doc["result"]["outcome"]["kind"], "exhausted");
}

#[test]
fn verify_theorem_small_box() {
    let (code, doc) = json(&["verify-theorem", "--degree", "2", "-C", "2", "-r", "1", "--primes", "60"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["cardinality"], 124);
    assert_eq!(doc["result"]["totals"]["candidates"], 124);
    assert!(doc["result"]["discrepancies"].as_array().unwrap().is_empty());
}

#[test]
fn verify_theorem_budget_exits_3() {
    let (code, doc) = json(&["verify-theorem", "--degree", "3", "-C", "5", "-r", "1", "--budget", "100"]);
    assert_eq!(code, 3);
    assert!(doc["result"]["error"].as_str().unwrap().contains("budget"));
}

#[test]
fn explore_both_kinds() {
    let (code, doc) = json(&["explore", "-u", "x^2-1", "-W", "3", "--kind", "n"]);
    assert_eq!(code, 0);
    let rs: Vec<i64> = doc["result"]["entries"].as_array().unwrap().iter().map(|e| e["r"].as_i64().unwrap()).collect();
    assert_eq!(rs, vec![-1, 0, 1]);

    let (code, doc) = json(&["explore", "-u", "x-1", "-W", "2"]);
    assert_eq!(code, 0);
    let entries = doc["result"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 5);
    assert_eq!(entries[3]["status"]["kind"], "nilpotent");
}

#[test]
fn trap_report_and_caps() {
    let (code, doc) = json(&["trap", "-p", "7", "--points"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["nilpotent"], true);
    assert_eq!(doc["result"]["first_zero"].as_array().unwrap().len(), 49);
    assert_eq!(doc["result"]["fixed_points"], serde_json::json!([{"x": 0, "y": 0, "p": 7}]));

    let (code, doc) = json(&["trap", "-p", "103"]);
    assert_eq!(code, 3);
    assert!(doc["result"]["error"].as_str().unwrap().contains("103"));

    let out = run(&["trap", "-p", "9", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn lemma1_and_reduce() {
    let (code, doc) = json(&["lemma1", "--alpha", "2", "--beta", "3", "--gamma", "1", "--primes", "20"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["witnesses"], serde_json::json!([7, 17]));

    let out = run(&["lemma1", "--alpha", "2", "--beta", "8", "--gamma", "1"]);
    assert_eq!(out.status.code(), Some(1));

    let (code, doc) = json(&["reduce", "-u", "4x^2-4x", "-r", "2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["v"]["text"], "8x^2-4x");

    let out = run(&["reduce", "-u", "x+1", "-r", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["classify", "-u", "x+1", "-r", "1", "-A", "4"][..],
        &["classify", "-u", "x+", "-r", "1"],
        &["certify", "-u", "x", "-r", "one"],
        &["certify", "-u", "0", "-r", "1"],
        &["frobnicate"],
        &["orbit", "-u", "x"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn env_overrides_flag_defaults() {
    let out = bin().env("LOCNIL_PRIME_BOUND", "7").args(["certify", "-u", "x+1", "-r", "1", "--json"]).output().unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["inputs"]["prime_bound"], 7);
    assert_eq!(doc["result"]["certificates"].as_array().unwrap().len(), 4);

    // an explicit flag wins over the environment
    let out = bin()
        .env("LOCNIL_PRIME_BOUND", "7")
        .args(["certify", "-u", "x+1", "-r", "1", "--primes", "3", "--json"])
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["inputs"]["prime_bound"], 3);

    let out = bin().env("LOCNIL_TRAP_CAP", "5").args(["trap", "-p", "7", "--json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn out_file_receives_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["classify", "-u", "x+1", "-r", "1", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    validated(&doc);
    assert_eq!(doc["citations"], serde_json::json!(["Thm1.4"]));
}

#[test]
fn reruns_agree_apart_from_timings() {
    let args = ["verify-theorem", "--degree", "1", "-C", "4", "-r", "6", "--primes", "40"];
    let (_, mut a) = json(&args);
    let (_, mut b) = json(&args);
    a.as_object_mut().unwrap().remove("timings");
    b.as_object_mut().unwrap().remove("timings");
    assert_eq!(a, b);
}

#[test]
fn human_output_is_plain_text() {
    let out = run(&["certify", "-u", "x+1", "-r", "1", "--primes", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("certify"));
    assert!(text.contains("consistent_up_to"));
    assert!(serde_json::from_str::<Value>(&text).is_err());
}
