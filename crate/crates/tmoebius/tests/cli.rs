use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tmoebius"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("tmoebius-cli-{}-{name}", std::process::id()))
}

#[test]
fn the_contract_example_gives_twelve() {
    let out = run(&[
        "invariant", "--surface", "m0", "--genus", "1", "--a", "1", "--b", "1", "--nu", "1,1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(value["N"], serde_json::json!(12));
    assert_eq!(value["convention"], serde_json::json!("val-1"));
}

#[test]
fn parity_violations_exit_one_and_name_the_relation() {
    let out = run(&[
        "invariant", "--surface", "m1", "--genus", "1", "--a", "1/2", "--b", "1", "--nu", "1,1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("parity relation"), "{}", stderr(&out));

    let out = run(&[
        "invariant", "--surface", "m0", "--genus", "1", "--a", "1", "--b", "2", "--nu", "1,1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("class relation"), "{}", stderr(&out));
}

#[test]
fn half_integers_are_fractions_not_decimals() {
    let out = run(&[
        "invariant", "--surface", "m0", "--genus", "1", "--a", "1.5", "--b", "1", "--nu", "1,1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("3/2"), "{}", stderr(&out));

    let out = run(&[
        "invariant", "--surface", "m1", "--genus", "2", "--a", "3/2", "--nu", "1,1,1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn diagrams_stream_one_json_object_per_line() {
    let out = run(&[
        "diagrams", "--surface", "m0", "--genus", "1", "--a", "1", "--nu", "1,1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    for line in &lines {
        let value: serde_json::Value = serde_json::from_str(line).expect("json per line");
        assert!(value.get("vertices").is_some());
        assert!(value.get("ends").is_some());
    }
}

#[test]
fn markings_accept_a_streamed_diagram() {
    let out = run(&[
        "diagrams", "--surface", "m0", "--genus", "1", "--a", "1", "--nu", "1,1",
    ]);
    let first = stdout(&out).lines().next().expect("a diagram").to_string();
    let path = tmp("diagram.json");
    std::fs::write(&path, first).expect("write diagram");

    let out = run(&["markings", "--diagram", path.to_str().expect("utf8 path")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let value: serde_json::Value =
        serde_json::from_str(stdout(&out).lines().next().expect("a class")).expect("json");
    assert!(value.get("extension_count").is_some());
    std::fs::remove_file(&path).ok();
}

#[test]
fn corrupted_diagram_files_exit_one() {
    let path = tmp("bad-diagram.json");
    std::fs::write(
        &path,
        r#"{"vertices":[{"kind":"joint"}],"edges":[],"ends":[]}"#,
    )
    .expect("write diagram");
    let out = run(&["markings", "--diagram", path.to_str().expect("utf8 path")]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(&path).ok();
}

#[test]
fn worker_counts_do_not_change_the_bytes() {
    let args = [
        "invariant", "--surface", "m0", "--genus", "2", "--a", "2", "--nu", "1,1,1,1",
    ];
    let reference = run(&args);
    assert_eq!(reference.status.code(), Some(0));
    for jobs in ["1", "4", "8"] {
        let out = run(&[&args[..], &["--jobs", jobs]].concat());
        assert_eq!(out.stdout, reference.stdout, "jobs={jobs}");
    }
    let out = bin()
        .args(args)
        .env("TMOEBIUS_JOBS", "3")
        .output()
        .expect("binary runs");
    assert_eq!(out.stdout, reference.stdout, "TMOEBIUS_JOBS=3");
}

#[test]
fn out_flag_writes_the_file() {
    let path = tmp("series.json");
    let out = run(&[
        "series", "--surface", "m1", "--genus", "1", "--nu", "1", "--order", "6", "--out",
        path.to_str().expect("utf8 path"),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&path).expect("file written");
    let value: serde_json::Value = serde_json::from_str(&text).expect("json");
    assert_eq!(value["coefficients"][1], serde_json::json!("2"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn refined_output_is_palindromic_and_specializes() {
    let out = run(&[
        "bg", "--surface", "m1", "--genus", "1", "--a", "1", "--nu", "1,1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(value["palindromic"], serde_json::json!(true));
    assert_eq!(value["at_q_1"], serde_json::json!("12"));
}

#[test]
fn regularity_fit_emits_an_exact_certificate() {
    let out = run(&["regularity", "--family", "ground-etage"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(value["residual"], serde_json::json!("0"));
    assert!(value["single"].is_array());
    assert_eq!(value["chamber_ray"]["direction"], serde_json::json!([1, 1]));
}

#[test]
fn impossible_fits_exit_two() {
    let out = run(&[
        "regularity", "--family", "ground", "--degree-bound", "0", "--samples", "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("verification failure"), "{}", stderr(&out));
}

#[test]
fn verify_runs_a_chosen_criterion() {
    let out = run(&["verify", "--suite", "1,3", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("criterion 1: series identity [pass]"), "{text}");
    assert!(text.contains("criterion 3: genus-1 calibration [pass]"), "{text}");
}
