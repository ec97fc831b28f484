use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn ratpat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratpat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fx(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn score_canonical_fixture() {
    let out = ratpat(&[
        "score",
        &fx("canonical_episodes.jsonl"),
        &fx("canonical_reviews.json"),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc = json(&out);
    assert_eq!(doc["tool"], "ratpat");
    let reviewer = &doc["reviewers"][0];
    assert_eq!(reviewer["tau_size"], 16);
    let degrees: Vec<(String, String)> = reviewer["assessments"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| {
            (
                a["object"].as_str().unwrap().to_string(),
                a["degree"].to_string(),
            )
        })
        .collect();
    assert_eq!(
        degrees,
        [
            ("M".into(), "0.00000000".into()),
            ("N".into(), "0.66666667".into()),
            ("V".into(), "0.66666667".into()),
            ("Z".into(), "0.00000000".into()),
        ]
    );
    let overall = &reviewer["overall"];
    assert_eq!(overall["realized_r"], 2);
    assert_eq!(overall["distribution"][1]["f"].to_string(), "0.25000000");
    assert_eq!(overall["at_realized"]["lt"].to_string(), "0.31250000");
}

#[test]
fn score_is_byte_identical_across_runs() {
    let args = [
        "score",
        &fx("canonical_episodes.jsonl"),
        &fx("canonical_reviews.json"),
    ];
    assert_eq!(ratpat(&args).stdout, ratpat(&args).stdout);
}

#[test]
fn score_writes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = ratpat(&[
        "score",
        &fx("canonical_episodes.jsonl"),
        &fx("canonical_reviews.json"),
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.lines().count() > 4, "{body}");
}

#[test]
fn score_empty_episode_file_fails() {
    let out = ratpat(&["score", &fx("empty.jsonl")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn score_flags_unknown_object_but_still_reports() {
    let out = ratpat(&[
        "score",
        &fx("canonical_episodes.jsonl"),
        &fx("unknown_object_reviews.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    let issues = doc["issues"].as_array().unwrap();
    assert_eq!(issues.len(), 1);
    assert_eq!(issues[0]["object"], "Q");
    assert_eq!(
        doc["reviewers"][0]["assessments"].as_array().unwrap().len(),
        4
    );
}

#[test]
fn score_rejects_bad_probability() {
    let out = ratpat(&["score", &fx("canonical_episodes.jsonl"), "--p", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn score_options_change_the_report() {
    let smoothed = json(&ratpat(&[
        "score",
        &fx("canonical_episodes.jsonl"),
        "--membership",
        "smoothed",
    ]));
    assert_eq!(smoothed["config"]["membership"], "smoothed");
    assert_eq!(
        smoothed["reviewers"][0]["assessments"][0]["degree"].to_string(),
        "0.25000000"
    );
    let quarter = json(&ratpat(&[
        "score",
        &fx("canonical_episodes.jsonl"),
        "--p",
        "1/4",
    ]));
    assert_eq!(quarter["config"]["p"].to_string(), "0.25000000");
}

fn tau_rows(n: &str, t: &str) -> Vec<Value> {
    let out = ratpat(&["tau", "--n", n, "--t", t]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    json(&out)["rows"].as_array().unwrap().clone()
}

#[test]
fn tau_listing_sizes() {
    let rows = tau_rows("4", "2");
    assert_eq!(rows.len(), 16);
    let mut freq: Vec<(String, u64)> = rows
        .iter()
        .map(|r| {
            (
                r["bar"].as_str().unwrap().to_string(),
                r["frequency"].as_u64().unwrap(),
            )
        })
        .collect();
    freq.sort();
    freq.dedup();
    let want: Vec<(String, u64)> = [
        ("A", 3),
        ("B", 2),
        ("C", 1),
        ("D", 4),
        ("E", 3),
        ("F", 2),
        ("G", 1),
    ]
    .iter()
    .map(|&(b, f)| (b.to_string(), f))
    .collect();
    assert_eq!(freq, want);

    assert_eq!(tau_rows("2", "1").len(), 2);
    assert_eq!(tau_rows("3", "2").len(), 9);
}

#[test]
fn tau_rejects_single_object() {
    assert_eq!(
        ratpat(&["tau", "--n", "1", "--t", "2"]).status.code(),
        Some(2)
    );
}

#[test]
fn info_index_picks_maximum() {
    let out = ratpat(&["info-index", &fx("ifs_pair.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["chosen"], "a");
    assert_eq!(doc["elements"][0]["h"].to_string(), "1.00000000");

    let text = ratpat(&["info-index", &fx("ifs_pair.json"), "--format", "text"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("H=1.00000000"));
    assert!(text.ends_with("chosen: a\n"));
}

#[test]
fn info_index_singleton() {
    let doc = json(&ratpat(&["info-index", &fx("ifs_single.json")]));
    assert_eq!(doc["chosen"], "only");
}

#[test]
fn info_index_invalid_grades_name_the_element() {
    let out = ratpat(&["info-index", &fx("ifs_invalid.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("broken"), "{}", stderr(&out));
}

#[test]
fn check_order_induced_table() {
    let doc = json(&ratpat(&["check", &fx("table_order.json")]));
    assert_eq!(doc["contraction_consistent"], true);
    assert_eq!(
        doc["rationalizing_order"],
        serde_json::json!(["M", "N", "V", "Z"])
    );
}

#[test]
fn check_violating_table() {
    let out = ratpat(&["check", &fx("table_violating.json"), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        "contraction: violated\n  C{a,b}=a but C{a,b,c}=b\nrationalizing order: none\n"
    );
}

#[test]
fn check_incomplete_table_lists_missing_subsets() {
    let out = ratpat(&["check", &fx("table_incomplete.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    for s in ["{x2}", "{x1,x2,x3}"] {
        assert!(err.contains(s), "{err}");
    }
}
