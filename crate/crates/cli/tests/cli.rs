//! End-to-end tests of the `severi` binary: output formats, exit codes, and
//! the cache file contract.

use std::process::{Command, Output};

fn severi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_severi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn count_text_output() {
    let out = severi(&["count", "--d", "4", "--delta", "3", "--alpha", "2", "--beta", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "N^{4,3}(2,2) = 674");

    let out = severi(&["count", "--d", "4", "--delta", "3", "--alpha", "2", "--beta", "2", "--irr"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "N_irr^{4,3}(2,2) = 620");

    let out = severi(&["count", "--d", "1", "--delta", "0", "--alpha", "1", "--beta", "[]"]);
    assert!(out.status.success());
    assert!(stdout(&out).trim().ends_with("= 1"));
}

#[test]
fn count_json_uses_string_values() {
    let out = severi(&[
        "count", "--d", "4", "--delta", "2", "--beta", "4", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["command"], "count");
    assert_eq!(v["inputs"]["d"], 4);
    assert_eq!(v["inputs"]["beta"], serde_json::json!([4]));
    // big integers are strings, never native numbers
    assert_eq!(v["result"], serde_json::json!("225"));
    assert!(v["citations"].as_array().is_some_and(|c| !c.is_empty()));
}

#[test]
fn count_expand_lists_recursion_terms() {
    let out = severi(&[
        "count", "--d", "4", "--delta", "3", "--alpha", "2", "--beta", "2", "--expand",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1 * N^{4,3}(3,1)"));
    assert!(text.contains("3 * N^{3,1}(0,3)"));
    assert!(text.contains("2 * N^{3,0}(1,2)"));
}

#[test]
fn invalid_key_exits_2_with_diagnostic() {
    let out = severi(&["count", "--d", "3", "--delta", "1", "--alpha", "2", "--beta", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("weight"), "diagnostic names the violated invariant: {err}");
}

#[test]
fn unknown_flag_exits_2() {
    let out = severi(&["count", "--degree", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_full_run_passes() {
    let out = severi(&["verify"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("N^{4,2}(4,0) = 172"));
    assert!(text.contains("0 failed"));
}

#[test]
fn verify_salmon_only_csv() {
    let out = severi(&["verify", "--only", "salmon", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(
        headers,
        csv::StringRecord::from(vec!["expression", "expected", "computed", "status", "citation"])
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert!(rows.iter().any(|r| &r[0] == "t(4)" && &r[2] == "3200" && &r[3] == "pass"));
}

#[test]
fn verify_tacnode_json_round_trips() {
    let out = severi(&["verify", "--only", "tacnode", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let checks = v["result"]["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .any(|c| c["expression"].as_str().unwrap().contains("Disc_x")
            && c["status"] == "pass"));
    assert_eq!(v["result"]["failed"], 0);
}

#[test]
fn tacnode_examples() {
    let out = severi(&["tacnode", "disc", "--m", "2", "--alpha", "-1", "--beta", "0,0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x^4 - 2x^2 + 1");

    let out = severi(&["tacnode", "cheb", "--kind", "T", "--n", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "8x^4 - 8x^2 + 1");

    let out = severi(&["tacnode", "psi", "--m", "3", "--t", "1", "--profile"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "(2, false)");

    let out = severi(&["tacnode", "psi", "--m", "2", "--t", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "alpha = [-1], beta = [1/4,0]");

    let out = severi(&["tacnode", "profile", "--m", "2", "--alpha", "0", "--beta", "0,0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "(0, true)");

    let out = severi(&["tacnode", "cusp"]);
    assert!(out.status.success());

    let out = severi(&["tacnode", "swallowtail"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("4096*a0^3*b1^2"));

    // invalid rational is a usage error
    let out = severi(&["tacnode", "psi", "--m", "2", "--t", "one"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cache_file_round_trip_and_corruption_handling() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("memo.ndjson");
    let cache_str = cache.to_str().unwrap();

    let args = ["count", "--d", "4", "--delta", "2", "--beta", "4", "--cache", cache_str];
    let out = severi(&args);
    assert!(out.status.success());
    assert!(stdout(&out).contains("225"));
    let contents = std::fs::read_to_string(&cache).unwrap();
    assert!(contents.lines().count() > 0);
    let first: serde_json::Value = serde_json::from_str(contents.lines().next().unwrap()).unwrap();
    assert!(first["value"].is_string());

    // warm run gives the same answer
    let out = severi(&args);
    assert!(out.status.success());
    assert!(stdout(&out).contains("225"));

    // corrupt records are skipped with a warning, not trusted
    std::fs::write(&cache, format!("garbage\n{contents}")).unwrap();
    let out = severi(&args);
    assert!(out.status.success());
    assert!(stdout(&out).contains("225"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("skipped 1 corrupt cache record"));
}
