//! End-to-end runs of the `uposet` subcommands.

use serde_json::Value;
use std::process::Command;

fn uposet(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_uposet")).args(args).output().expect("uposet runs");
    let doc = if out.stdout.is_empty() { Value::Null } else { serde_json::from_slice(&out.stdout).expect("JSON output") };
    (out.status.code().expect("exit code"), doc)
}

fn diamond_file(dir: &tempfile::TempDir) -> String {
    let path = dir.path().join("diamond.json");
    std::fs::write(&path, r#"{"n": 4, "covers": [[2, 1], [1, 3], [2, 4], [4, 3]]}"#).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn embed_certifies_every_target() {
    let dir = tempfile::tempdir().unwrap();
    let input = diamond_file(&dir);
    for target in ["words", "intervals", "convex", "grammar", "vectors", "periodic", "paths", "generic"] {
        let (code, doc) = uposet(&["embed", "--target", target, "--input", &input]);
        assert_eq!(code, 0, "{target}: {doc}");
        assert_eq!(doc["ok"], true);
        assert_eq!(doc["target"], target);
        assert_eq!(doc["images"].as_array().unwrap().len(), 4);
    }
    let (code, doc) = uposet(&["embed", "--target", "vectors", "--direct", "--input", &input]);
    assert_eq!(code, 0);
    assert_eq!(doc["ok"], true);
}

#[test]
fn embed_refuses_large_word_images_without_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("antichain.json");
    std::fs::write(&path, r#"{"n": 13, "covers": []}"#).unwrap();
    let (code, _) = uposet(&["embed", "--target", "words", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    let (code, _) = uposet(&["embed", "--target", "generic", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    let (code, doc) = uposet(&["embed", "--target", "vectors", "--direct", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["ok"], true);
}

#[test]
fn single_queries() {
    assert_eq!(uposet(&["restrict", "0111", "2"]).1["restricted"], "01");
    assert_eq!(uposet(&["hom", ">", ">>"]).1["exists"], true);
    assert_eq!(uposet(&["hom", ">>", ">"]).1["exists"], false);
    assert_eq!(uposet(&["derives", "1", "v10^"]).1["derives"], true);
    assert_eq!(uposet(&["derives", "v11^", "1"]).1["derives"], false);
    assert_eq!(uposet(&["gaps", r#"["0","1"]"#, r#"[""]"#]).1["gap"], true);
    assert_eq!(uposet(&["gaps", r#"["00"]"#, r#"[""]"#]).1["gap"], false);
    assert_eq!(uposet(&["valid", "{}"]).1["valid"], true);
    assert_eq!(uposet(&["valid", "{@}"]).1["valid"], false);
    assert_eq!(uposet(&["leq", "{}", "{}"]).1["strict"], false);
    let (code, doc) = uposet(&["densify", r#"[["0","1/2"]]"#, r#"[["0","1"]]"#]);
    assert_eq!(code, 0);
    assert_eq!(doc["strictly_between"], true);
    let (code, doc) = uposet(&["verify-blocks"]);
    assert_eq!(code, 0);
    assert_eq!(doc["ok"], true);
}

#[test]
fn witness_uses_one_based_elements() {
    let dir = tempfile::tempdir().unwrap();
    let input = diamond_file(&dir);
    let (code, doc) = uposet(&["witness", "--input", &input, "--set", "3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["word"].as_str().unwrap().len(), 4);
    assert_eq!(uposet(&["witness", "--input", &input, "--set", "0"]).0, 2);
}

#[test]
fn figures_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("figs");
    let (code, doc) = uposet(&["figures", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    for name in ["hasse.dot", "polygons.svg", "pbar_0110.dot", "word_tree.dot"] {
        assert!(out.join(name).exists(), "{name}");
        assert!(doc["files"].as_array().unwrap().iter().any(|f| f == name));
    }
    let svg = std::fs::read_to_string(out.join("polygons.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
}

#[test]
fn unknown_suite_is_an_error() {
    assert_eq!(uposet(&["verify", "--suite", "nonexistent"]).0, 2);
}
