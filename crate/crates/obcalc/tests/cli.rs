//! Golden tests for the command-line surface: the documented invocations
//! produce byte-stable text, JSON mode emits one document, and the exit
//! codes are 0 / 1 / 2 for success / domain error / usage error.

use std::path::PathBuf;
use std::process::{Command, Output};

fn obcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_obcalc"))
        .args(args)
        .env_remove("OBCALC_C1SQ_CHANNEL")
        .env_remove("OBCALC_D3_OFFSET")
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn data_file(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name);
    path.to_str().unwrap().to_owned()
}

#[test]
fn classify_documented_example() {
    let out = obcalc(&["classify", "--word", "a b"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "periodic, FDTC 1/6\n");
}

#[test]
fn classify_json_is_one_document() {
    let out = obcalc(&["classify", "--word", "b a^-1", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["classification"]["kind"], "pseudo_anosov");
    assert_eq!(doc["classification"]["d"], 0);
}

#[test]
fn d3_documented_example() {
    let out = obcalc(&["d3", "--genus", "1", "-m", "6", "-k", "0,1"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.starts_with("d3 = 1/2\n"), "{text}");
    assert!(text.contains("cap 1: form trivial"), "{text}");
    assert!(text.contains("binding bound margin"), "{text}");
}

#[test]
fn d3_json_rationals_are_strings() {
    let out = obcalc(&["d3", "-m", "6", "-k", "1,2", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["report"]["d3_telescoped"], "-55/72");
    assert_eq!(doc["report"]["per_cap"][0]["c1_squared_printed"], "1/18");
    assert_eq!(doc["bound_satisfied"], false);
}

#[test]
fn d3_respects_channel_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_obcalc"))
        .args(["d3", "-m", "6", "-k", "1,2", "--json"])
        .env("OBCALC_C1SQ_CHANNEL", "first_principles")
        .env("OBCALC_D3_OFFSET", "1/2")
        .output()
        .unwrap();
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    // -5/8 + 1/2 = -1/8 under the first-principles channel.
    assert_eq!(doc["report"]["d3_telescoped"], "-1/8");
    assert_eq!(doc["report"]["convention"], "first_principles");
}

#[test]
fn det_documented_example() {
    let out = obcalc(&["det", "--braid", "s2 s1^-1"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "1\n");
    let json = obcalc(&["det", "--braid", "s2 s1^-1", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&json)).unwrap();
    assert_eq!(doc["determinant"], 1);
    assert_eq!(doc["method"], "burau");
    let bracket = obcalc(&["det", "--braid", "s2 s1^-1", "--method", "bracket", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&bracket)).unwrap();
    assert_eq!(doc["method"], "bracket-oracle");
}

#[test]
fn sg_documented_example() {
    let out = obcalc(&["sg", "--n", "1,2", "--d", "2"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.starts_with("support genus: one\n"), "{text}");
    assert!(text.contains("base: condition R holds for n = (1) at d = 2"), "{text}");
}

#[test]
fn cap_emits_descriptor_json() {
    let out = obcalc(&["cap", "--book", &data_file("s12_book.json"), "--label", "B"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["monodromy"], "a b a b a b a b a b^3");
    assert_eq!(doc["boundary"], serde_json::json!(["B2"]));
}

#[test]
fn glue_and_self_glue() {
    let book = data_file("s12_book.json");
    let out = obcalc(&["glue", "--book1", &book, "--book2", &book, "--pairs", "B:B2"]);
    // Duplicate curve ids across the two alphabets: a domain error.
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("duplicate"), "{err}");
}

#[test]
fn infer_pipeline_text_and_json() {
    let script = data_file("capping_pipeline.json");
    let out = obcalc(&["infer", "--script", &script]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("sg_ge(1) on capped  [by R-planar]"), "{text}");
    assert!(text.contains("stein_fillable on ob  [asserted]"), "{text}");

    let json = obcalc(&["infer", "--script", &script, "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&json)).unwrap();
    assert!(doc["facts"].as_array().unwrap().len() >= 8);
}

#[test]
fn validate_pa_fires_reporter() {
    let out = obcalc(&["validate-pa", "--data", &data_file("orientable_foliation.json")]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("ok: singularity data is balanced"), "{text}");
    assert!(text.contains("image of U^d for every d"), "{text}");
}

#[test]
fn exit_codes() {
    // Domain error: 1.
    let out = obcalc(&["classify", "--word", "c"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("outside"));
    // Negative coefficients parse and fail as a domain error, not usage.
    let out = obcalc(&["d3", "-m", "6", "-k", "-1,3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("overtwisted"));
    // Usage error: 2.
    let out = obcalc(&["classify"]);
    assert_eq!(out.status.code(), Some(2));
    let out = obcalc(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn golden_outputs_are_byte_stable() {
    let invocations: Vec<Vec<&str>> = vec![
        vec!["classify", "--word", "a b"],
        vec!["classify", "--word", "a b", "--json"],
        vec!["d3", "-m", "6", "-k", "0,1"],
        vec!["d3", "-m", "6", "-k", "1,2", "--json"],
        vec!["det", "--braid", "s2 s1^-1"],
        vec!["sg", "--n", "1,2", "--d", "3"],
    ];
    for args in invocations {
        let first = stdout_of(&obcalc(&args));
        let second = stdout_of(&obcalc(&args));
        assert_eq!(first, second, "unstable output for {args:?}");
        assert!(!first.is_empty());
    }
}
