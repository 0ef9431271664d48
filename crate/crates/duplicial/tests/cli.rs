use std::path::PathBuf;

use duplicial::cli::{main_with, Status};
use duplicial::nerve::{decide, FiniteCategory};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> (Status, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["duplicial"];
    full.extend_from_slice(args);
    let s = main_with(full, &mut out, &mut err);
    (s, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn cyclic_of_ground_field() {
    let (s, out, _) = run(&["cyclic", "--algebra", &data("Q.json"), "--top", "4"]);
    assert_eq!(s, Status::Ok);
    let rows: Vec<&str> = out.lines().skip(2).collect();
    assert_eq!(rows.len(), 5);
    for (row, expect) in rows.iter().zip(["1", "0", "1", "0"]) {
        assert_eq!(row.split_whitespace().nth(1), Some(expect));
        assert!(!row.contains("truncated"));
    }
    assert!(rows[4].contains("truncated"));
}

#[test]
fn nerve_of_interval() {
    let (s, out, _) = run(&["nerve", "--category", &data("interval.json")]);
    assert_eq!(s, Status::Ok);
    assert_eq!(out.lines().next(), Some("duplicial: yes, cyclic: no, witness: {0}"));
}

#[test]
fn idempotent_is_not_hopf() {
    let (s, out, _) = run(&["hopf", "--bialgebra", &data("idem.json")]);
    assert_eq!(s, Status::Ok);
    assert_eq!(out.trim(), "Hopf: no (Galois map singular)");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["validate", &data("nonassoc.json")]).0, Status::Invalid);
    assert_eq!(run(&["validate", &data("Q.json")]).0, Status::Ok);
    assert_eq!(run(&["validate", &data("missing.json")]).0, Status::Parse);
    assert_eq!(run(&["cyclic"]).0, Status::Parse);
    assert_eq!(run(&["check-law", "--law", "nonsense"]).0, Status::Parse);
    assert_eq!(run(&["check-law", "--structure", "P", "--carrier", "3"]).0, Status::Invalid);
}

#[test]
fn nonassociative_names_triple() {
    let (_, out, _) = run(&["validate", &data("nonassoc.json")]);
    assert!(out.contains("associativity fails on (e1, e1, e1)"), "{out}");
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["hochschild", "--algebra", "DUAL", "--format", "json"],
        vec!["twisted", "--algebra", "DUAL", "--sigma", "SIGMA"],
        vec!["hopf", "--bialgebra", "C3"],
        vec!["check-law", "--law", "dist-reader"],
        vec!["entwined-search", "--law", "powerset-color", "--carrier", "2"],
    ] {
        let (dual, sigma, c3) = (data("dual.json"), data("sigma_neg.json"), data("c3.json"));
        let args: Vec<&str> = args
            .iter()
            .map(|a| match *a {
                "DUAL" => dual.as_str(),
                "SIGMA" => sigma.as_str(),
                "C3" => c3.as_str(),
                other => other,
            })
            .collect();
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.0, Status::Ok, "{args:?}: {}", first.2);
        assert_eq!(first.1, second.1);
    }
}

#[test]
fn nerve_json_matches_library() {
    let (_, out, _) = run(&["nerve", "--category", &data("z2.json"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let lib = decide(&FiniteCategory::cyclic_group(2), 4);
    assert_eq!(v["cyclic"], lib.cyclic);
    assert_eq!(v["duplicial"], lib.duplicial);
    let (_, out, _) = run(&["nerve", "--category", &data("idem_monoid.json")]);
    assert!(out.starts_with("duplicial: no, cyclic: no, witness: none"));
}

#[test]
fn sign_coefficients_report() {
    let (s, out, _) = run(&["hopf", "--bialgebra", &data("c2.json"), "--coefficients", &data("sign_c2.json"), "--top", "2"]);
    assert_eq!(s, Status::Ok);
    assert!(out.contains("SAYD: yes"));
    assert!(out.contains("S(g) = g"));
}

#[test]
fn dimension_cap_warns() {
    let (s, _, err) = run(&["hochschild", "--algebra", &data("upper_triangular.json"), "--top", "12"]);
    assert_eq!(s, Status::Ok);
    assert!(err.contains("top lowered"), "{err}");
}
