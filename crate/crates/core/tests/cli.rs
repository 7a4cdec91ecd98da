use std::io::Cursor;

use mubkit::cli::{run_args, Outcome};
use mubkit::CyclotomicInt;

fn run(args: &[&str]) -> Outcome {
    run_args(
        std::iter::once("mubkit").chain(args.iter().copied()),
        &mut Cursor::new(Vec::new()),
    )
}

fn run_stdin(args: &[&str], input: &str) -> Outcome {
    run_args(
        std::iter::once("mubkit").chain(args.iter().copied()),
        &mut Cursor::new(input.as_bytes().to_vec()),
    )
}

fn tmp(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("mubkit-cli-{}-{name}", std::process::id()))
}

#[test]
fn generate_then_verify_round_trip() {
    let path = tmp("d5.json");
    let p = path.to_str().unwrap();
    let gen = run(&["generate", "--dim", "5", "--out", p]);
    assert_eq!(gen.code, 0, "{}", gen.stderr);
    let ver = run(&["verify", p]);
    assert_eq!(ver.code, 0, "{}", ver.stderr);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(run_stdin(&["verify", "-"], &text).code, 0);
    std::fs::remove_file(path).ok();
}

#[test]
fn records_stream_is_accepted_by_verify() {
    let gen = run(&["--format", "records", "generate", "--dim", "4"]);
    assert_eq!(gen.code, 0);
    for line in gen.stdout.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v.get("kind").is_some(), "{line}");
    }
    let ver = run_stdin(&["--format", "records", "verify"], &gen.stdout);
    assert_eq!(ver.code, 0, "{}", ver.stderr);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["generate", "--dim", "6"][..],
        &["--format", "records", "bell", "--dim", "4"],
        &["geometry", "lifted"],
        &["tables", "lift"],
    ] {
        assert_eq!(run(args), run(args), "{args:?}");
    }
}

#[test]
fn flipped_coefficient_fails_with_located_pair() {
    let path = tmp("d3.json");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["generate", "--dim", "3", "--out", p]).code, 0);
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let entry = &mut doc["bases"][2]["vectors"][1][0];
    let value = CyclotomicInt::parse(entry.as_str().unwrap(), 3).unwrap();
    *entry = (-value).to_string().into();
    let out = run_stdin(&["--format", "records", "verify"], &doc.to_string());
    std::fs::remove_file(path).ok();
    assert_eq!(out.code, 1, "{}", out.stderr);
    let failed: Vec<serde_json::Value> = out
        .stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .filter(|v: &serde_json::Value| v["kind"] == "pair" && v["unbiased"] == false)
        .collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|v| v["left"] == 2 || v["right"] == 2));
    assert!(failed.iter().all(|v| v["failure"]["value"].is_string()));
}

#[test]
fn invalid_input_exits_2() {
    assert_eq!(run(&["generate", "--dim", "0"]).code, 2);
    assert_eq!(
        run(&["generate", "--dim", "6", "--construction", "field"]).code,
        2
    );
    assert_eq!(run(&["generate", "--dim", "300"]).code, 2);
    assert_eq!(
        run(&["bell", "--dim", "4", "--construction", "field"]).code,
        2
    );
    assert_eq!(run(&["geometry", "plane"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    let bad = run_stdin(&["verify"], "{not json");
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.starts_with("error:"));
}

#[test]
fn failing_bell_family_exits_1() {
    let out = run(&["bell", "--dim", "9", "--construction", "field-dim"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("FAIL"));
}

#[test]
fn tables_and_geometry_succeed() {
    for args in [
        &["tables", "gf8"][..],
        &["tables", "gr43"],
        &["geometry", "fano"],
        &["geometry", "plane", "--q", "4"],
    ] {
        let out = run(args);
        assert_eq!(out.code, 0, "{args:?}");
        assert!(!out.stdout.is_empty());
    }
}
