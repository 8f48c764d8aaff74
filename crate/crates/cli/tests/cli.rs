//! End-to-end command tests: document round-trips, the exit-code
//! contract, and report determinism.

use std::io::Write;
use std::process::Command;

use novflow_cli::{parse_document, serialize_document, DocError, Document};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_novflow"))
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

fn minimal_flow_category() -> String {
    r#"{
      "fmt": 1,
      "kind": "flow_category",
      "payload": {
        "group": { "energy": [], "grading": [] },
        "objects": [
          { "id": "x", "mu": 1, "energy": { "num": 1, "den": 1 } },
          { "id": "y", "mu": 0, "energy": { "num": 0, "den": 1 } }
        ],
        "morphisms": [
          { "source": "x", "target": "y", "g": [], "label": 0, "count": 3 }
        ],
        "flags": { "proper": true, "e_proper": true, "e_positive": true, "gapped": true }
      }
    }"#
    .to_string()
}

fn failing_category() -> String {
    r#"{
      "fmt": 1,
      "kind": "flow_category",
      "payload": {
        "group": { "energy": [], "grading": [] },
        "objects": [
          { "id": "x", "mu": 2, "energy": { "num": 2, "den": 1 } },
          { "id": "z", "mu": 1, "energy": { "num": 1, "den": 1 } },
          { "id": "y", "mu": 0, "energy": { "num": 0, "den": 1 } }
        ],
        "morphisms": [
          { "source": "x", "target": "z", "g": [], "label": 0, "count": 1 },
          { "source": "z", "target": "y", "g": [], "label": 0, "count": 1 }
        ],
        "flags": { "proper": true, "e_proper": true, "e_positive": true, "gapped": true }
      }
    }"#
    .to_string()
}

#[test]
fn parse_roundtrip_is_stable() {
    let doc = parse_document(&minimal_flow_category()).unwrap();
    let text = serialize_document(&doc);
    let doc2 = parse_document(&text).unwrap();
    assert_eq!(doc, doc2);
}

#[test]
fn morse_export_reparses_equal() {
    let out = bin().args(["morse", "rp2"]).output().unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let doc_value = &report["findings"][0]["document"];
    let text = serde_json::to_string(doc_value).unwrap();
    let doc = parse_document(&text).unwrap();
    assert!(matches!(doc, Document::Complex(_)));
    let doc2 = parse_document(&serialize_document(&doc)).unwrap();
    assert_eq!(doc, doc2);
}

#[test]
fn malformed_rational_is_a_schema_error() {
    let bad = minimal_flow_category().replace(r#"{ "num": 1, "den": 1 }"#, r#"{ "num": 1, "den": 0 }"#);
    match parse_document(&bad) {
        Err(DocError::Schema { path, .. }) => assert!(path.contains("energy"), "path: {}", path),
        other => panic!("expected schema error, got {:?}", other),
    }
}

#[test]
fn syntax_error_reports_line_and_column() {
    match parse_document("{ not json") {
        Err(DocError::Parse { line, .. }) => assert!(line >= 1),
        other => panic!("expected parse error, got {:?}", other),
    }
}

#[test]
fn arnold_demo_exit_zero_and_shape() {
    let out = bin().args(["arnold-demo", "rp2", "--format", "json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "ok");
    let f = &report["findings"][0];
    assert_eq!(f["critical"], 3);
    assert_eq!(f["min_rank"], 3);
    assert_eq!(f["bound_satisfied"], true);
}

#[test]
fn d2_failure_exits_one_with_witness() {
    let file = write_temp(&failing_category());
    let out = bin().args(["d2", file.path().to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "violation");
    assert_eq!(report["findings"][0]["from"], "x");
    assert_eq!(report["findings"][0]["to"], "y");
}

#[test]
fn unknown_subcommand_exits_two() {
    let out = bin().args(["frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_file_exits_two() {
    let out = bin().args(["d2", "/nonexistent/nowhere.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_modulo_timing() {
    let file = write_temp(&minimal_flow_category());
    let run = || {
        let out = bin().args(["assemble", file.path().to_str().unwrap()]).output().unwrap();
        let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v.as_object_mut().unwrap().remove("timing_ms");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn assemble_and_snf_pipeline() {
    let file = write_temp(&minimal_flow_category());
    let out = bin().args(["assemble", file.path().to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["findings"][0]["generators"], 2);

    let matrix_doc = r#"{
      "fmt": 1,
      "kind": "novikov_matrix",
      "payload": {
        "rows": 2, "cols": 2,
        "truncation": { "num": 5, "den": 1 },
        "entries": [
          [[{"c": 2, "e": {"num": 0, "den": 1}}], []],
          [[], [{"c": 3, "e": {"num": 0, "den": 1}}]]
        ]
      }
    }"#;
    let mfile = write_temp(matrix_doc);
    let out = bin().args(["snf", mfile.path().to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let f = &report["findings"][0];
    assert_eq!(f["factors"], serde_json::json!(["1", "6"]));
    assert_eq!(f["verified"], true);
}

#[test]
fn euler_and_double_on_documents() {
    // The interval as a strat_space document.
    let interval = r#"{
      "fmt": 1,
      "kind": "strat_space",
      "payload": {
        "k": 1,
        "cells": [
          { "id": 0, "dim": 0, "label": [] },
          { "id": 1, "dim": 0, "label": [] },
          { "id": 2, "dim": 1, "label": [1] }
        ],
        "faces": [
          { "cell": 2, "face": 0, "incidence": -1 },
          { "cell": 2, "face": 1, "incidence": 1 }
        ]
      }
    }"#;
    let file = write_temp(interval);
    let out = bin().args(["euler", file.path().to_str().unwrap()]).output().unwrap();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["findings"][0]["chi"], 1);

    let out = bin().args(["double", file.path().to_str().unwrap()]).output().unwrap();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["findings"][0]["euler"], 0);
    assert_eq!(report["findings"][0]["cells"], 4);
}

#[test]
fn transversal_detects_corner_zero() {
    let section = r#"{
      "fmt": 1,
      "kind": "section",
      "payload": {
        "corner_dim": 1, "free_dim": 0,
        "components": [[ { "coeff": { "num": 1, "den": 1 }, "exps": [1] } ]]
      }
    }"#;
    let file = write_temp(section);
    let out = bin().args(["transversal", file.path().to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "violation");
}
