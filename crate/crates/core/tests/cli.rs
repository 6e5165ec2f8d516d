//! End-to-end tests of the `siltkit` binary: outputs, exit codes, and
//! re-checking a verification report from the data it embeds.

use std::collections::BTreeMap;
use std::process::{Command, Output};

use serde_json::Value;
use siltkit::complexes::ComplexJson;
use siltkit::session::Session;
use siltkit::silting::{is_silting, SiltingObject};

fn siltkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_siltkit")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write_temp(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("siltkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn enumerate_a2_lists_the_pentagon() {
    let out = siltkit(&["enumerate", "--algebra", "a2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let j = json(&out);
    assert_eq!(j["count"], 5);
    assert_eq!(j["truncated"], false);
    assert!(j["objects"].as_array().unwrap().iter().all(|o| o["stau"]["module_dimvec"].is_array()));
}

#[test]
fn hasse_dot_has_five_nodes_and_five_arrows() {
    let out = siltkit(&["hasse", "--dot", "--algebra", "a2"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches(" [label=").count(), 10);
    assert_eq!(dot.matches(" -> ").count(), 5);
    assert!(dot.contains("truncated=false"));
}

#[test]
fn completing_a_silting_object_is_an_error() {
    let out = siltkit(&["complete", "--bongartz", "--algebra", "a2", "--object", "P:1,P:2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("already silting"));
}

#[test]
fn completions_of_a_projective() {
    let upper = json(&siltkit(&["complete", "--algebra", "a2", "--object", "P:2", "--format", "json"]));
    let lower = json(&siltkit(&[
        "complete",
        "--co-bongartz",
        "--algebra",
        "a2",
        "--object",
        "P:2",
        "--format",
        "json",
    ]));
    // the Bongartz completion of P_2 is A, the co-Bongartz one has the simple S_1 = coker(P_2 -> P_1)
    assert_eq!(upper["bongartz"]["stau"]["module_dimvec"], serde_json::json!([1, 2]));
    assert_eq!(lower["co_bongartz"]["stau"]["module_dimvec"], serde_json::json!([0, 1]));
}

#[test]
fn mutate_and_reduce_succeed() {
    let out = siltkit(&["mutate", "--algebra", "a3", "--vertex", "0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let j = json(&out);
    assert_eq!(j["mutations"].as_array().unwrap().len(), 3);
    assert!(j["mutations"].as_array().unwrap().iter().all(|m| m["direction"] == "left"));
    let out = siltkit(&["reduce", "--algebra", "a3", "--object", "P:1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let j = json(&out);
    assert_eq!(j["report"]["square_commutes"], true);
    assert_eq!(j["report"]["sizes"]["silt_u"], 5);
}

#[test]
fn green_sequences_of_a2() {
    let j = json(&siltkit(&["mgs", "--algebra", "a2", "--format", "json"]));
    let mut lengths: Vec<usize> = j["sequences"]
        .as_array()
        .unwrap()
        .iter()
        .map(|q| q.as_array().unwrap().len() - 1)
        .collect();
    lengths.sort_unstable();
    assert_eq!(lengths, vec![2, 3]);
}

#[test]
fn kronecker_is_reported_as_truncated() {
    let out = siltkit(&["hasse", "--algebra", "kronecker", "--max-nodes", "50", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let j = json(&out);
    assert_eq!(j["truncated"], true);
    assert_eq!(j["vertices"].as_array().unwrap().len(), 50);

    let out = siltkit(&["mgs", "--algebra", "kronecker", "--max-nodes", "20", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let j = json(&out);
    assert!(j["sequences"].as_array().unwrap().iter().any(|q| q.as_array().unwrap().len() == 3));
}

#[test]
fn bad_input_fails_before_any_suite() {
    let bad = write_temp("bad.toml", "vertices = [\"1\", \"2\"]\narrows = [[\"a\", \"1\", \"2\"]]\nrelations = [\"a\"]\n");
    let out = siltkit(&["verify", "--algebra", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("inadmissible relation"));

    let empty = write_temp("empty.toml", "vertices = []\n");
    let out = siltkit(&["check", "--algebra", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    assert_eq!(siltkit(&["verify", "--algebra", "a2", "--suite", "nope"]).status.code(), Some(1));
    assert_eq!(siltkit(&["enumerate", "--algebra", "a2", "--max-nodes", "0"]).status.code(), Some(1));
}

#[test]
fn output_file_and_repeatability() {
    let path = write_temp("hasse.json", "");
    let args = ["hasse", "--algebra", "a3", "--format", "json", "--out", path.to_str().unwrap()];
    assert_eq!(siltkit(&args).status.code(), Some(0));
    let first = std::fs::read(&path).unwrap();
    assert_eq!(siltkit(&args).status.code(), Some(0));
    assert_eq!(first, std::fs::read(&path).unwrap());
    let j: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(j["vertices"].as_array().unwrap().len(), 14);
}

/// The objects listed by the bijection suite are rebuilt in a fresh session
/// from the complexes embedded in the report and checked to be silting.
#[test]
fn verify_report_can_be_rechecked() {
    let out = siltkit(&["verify", "--algebra", "a3", "--suite", "bijection", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let j = json(&out);
    assert_eq!(j["outcome"], "pass");
    let table: BTreeMap<usize, ComplexJson> = serde_json::from_value(j["complexes"].clone()).unwrap();
    let s = Session::from_algebra(siltkit::corpus::load("a3", None).unwrap(), 1);
    let a = s.algebra();
    let pairs = j["suites"][0]["details"]["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 14);
    for p in pairs {
        let ids: Vec<usize> = serde_json::from_value(p["object"].clone()).unwrap();
        let local = ids.iter().map(|id| {
            let x = table[id].to_complex(a).unwrap();
            s.complexes().get_or_insert(a, &x).0
        });
        assert!(is_silting(&s, &SiltingObject::new(local)).unwrap());
    }
}
