use std::path::{Path, PathBuf};
use std::process::Command as Process;

use alexlarge::largeness::verify_certificate;
use alexlarge_cli::{parse_report, run, serialize_report, Command, Format, Payload, RunConfig};
use proptest::prelude::*;
use serde_json::Value;

const TREFOIL: &str = "< a, b | a b a b^-1 a^-1 b^-1 >";
const F2: &str = "< a, b | >";

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn alexlarge(args: &[&str]) -> (i32, String, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_alexlarge")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, out, err) = alexlarge(&all);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn betti_of_trefoil_cover_with_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "trefoil.fp", TREFOIL);
    let v = json(&["betti", f.to_str().unwrap(), "--quotient", "a:1,b:1 mod 6", "--check-oracle"]);
    assert_eq!(v["schema"], "alexlarge-report/1");
    assert_eq!(v["result"]["b1"], 3);
    assert_eq!(v["result"]["oracle_b1"], 3);
    assert_eq!(v["result"]["oracle_agree"], true);
}

#[test]
fn trefoil_polynomial_term_list() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "trefoil.fp", TREFOIL);
    let v = json(&["alexpoly", f.to_str().unwrap()]);
    assert_eq!(v["result"]["terms"], serde_json::json!(["1*t^2", "-1*t^1", "1*t^0"]));
}

#[test]
fn certificate_document_verifies_independently() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f2.fp", F2);
    let (code, out, _) = alexlarge(&["certify-large", f.to_str().unwrap(), "--n0", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let report = parse_report(out.as_bytes()).unwrap();
    let Some(Payload::Certificate(cert)) = report.result else {
        panic!("no certificate in {out}")
    };
    let b1: Vec<usize> = cert.rows.iter().map(|r| r.b1_oracle).collect();
    assert_eq!(cert.prime, 2);
    assert_eq!(b1, vec![3, 5, 9]);
    verify_certificate(&cert).unwrap();
}

#[test]
fn every_command_runs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let trefoil = write(d, "trefoil.fp", TREFOIL);
    let f2 = write(d, "f2.fp", F2);
    let bp = write(d, "bp.fp", "< t, a, b | t a t^-1 a^-2 >");
    let cat = write(d, "cat.mat", "2 1\n1 1\n");
    let (t, f, b, c) = (
        trefoil.to_str().unwrap(),
        f2.to_str().unwrap(),
        bp.to_str().unwrap(),
        cat.to_str().unwrap(),
    );
    let cases: Vec<Vec<&str>> = vec![
        vec!["alexmatrix", t],
        vec!["alexpoly", t],
        vec!["strata", t, "--character", "1,1 mod 6"],
        vec!["betti", t, "--quotient", "a:1,b:1 mod 4"],
        vec!["oracle-betti", f, "--quotient", "a:1 mod 3"],
        vec!["torsion-scan", t, "--max-order", "8"],
        vec!["subtorus-check", f, "--direction", "1,0"],
        vec!["certify-large", f, "--n0", "2"],
        vec!["rs-rewrite", f, "--quotient", "a:(1,0),b:(0,1) mod 2,2"],
        vec!["kronecker", c],
        vec!["bp-check", b, "--n-max", "3"],
        vec!["cheeger", f, "--quotient", "a:1 mod 4"],
        vec!["rank-gradient", f, "--prime", "2", "--quotient", "a:1 mod 2", "--quotient", "a:1 mod 4"],
        vec!["specialize", t, "--character", "mod 1"],
    ];
    assert_eq!(cases.len(), 14);
    for args in cases {
        let v = json(&args);
        assert_eq!(v["command"], args[0]);
        assert!(v["error"].is_null());
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f2.fp", F2);
    let bad = write(dir.path(), "bad.fp", "< a, b | a c >");
    let f = f.to_str().unwrap();
    // usage errors
    assert_eq!(alexlarge(&["frobnicate", f]).0, 2);
    assert_eq!(alexlarge(&["betti", f]).0, 2);
    assert_eq!(alexlarge(&["betti", f, "--quotient", "a:1"]).0, 2);
    assert_eq!(alexlarge(&["torsion-scan", f, "--max-order", "0"]).0, 2);
    // domain errors, reported in the document
    let (code, out, _) = alexlarge(&["alexpoly", bad.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["error"].as_str().unwrap().contains("unknown generator"));
    assert_eq!(alexlarge(&["alexpoly", "/nonexistent/x.fp"]).0, 1);
    assert_eq!(alexlarge(&["betti", f, "--quotient", "a:1 mod 2,2"]).0, 2);
    assert_eq!(alexlarge(&["betti", f, "--quotient", "a:2 mod 4"]).0, 1);
    assert_eq!(alexlarge(&["cheeger", f, "--quotient", "a:1 mod 30"]).0, 1);
}

#[test]
fn structured_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "trefoil.fp", TREFOIL);
    let args = ["torsion-scan", f.to_str().unwrap(), "--max-order", "12", "--format", "json"];
    assert_eq!(alexlarge(&args).1, alexlarge(&args).1);
}

#[test]
fn text_lines_address_json_leaves() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f2.fp", F2);
    let f = f.to_str().unwrap();
    let v = json(&["bp-check", f, "--n-max", "2"]);
    let (code, text, _) = alexlarge(&["bp-check", f, "--n-max", "2"]);
    assert_eq!(code, 0);
    let mut leaves = 0;
    for line in text.lines() {
        let (key, value) = line.split_once(" = ").unwrap();
        if key == "config.format" {
            continue;
        }
        let mut node = &v;
        for part in key.split('.') {
            node = match part.parse::<usize>() {
                Ok(i) if node.is_array() => &node[i],
                _ => &node[part],
            };
        }
        let expected = match node {
            Value::String(s) => s.clone(),
            Value::Array(a) if a.is_empty() => "[]".into(),
            other => other.to_string(),
        };
        assert_eq!(value, expected, "{key}");
        leaves += 1;
    }
    assert!(leaves > 10);
}

#[test]
fn timing_is_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f2.fp", F2);
    let f = f.to_str().unwrap();
    assert!(json(&["alexpoly", f])["timing"].is_null());
    assert!(json(&["alexpoly", f, "--timing"])["timing"]["elapsed_micros"].is_u64());
}

#[test]
fn dropped_relators_are_warned_about() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.fp", "< a, b | a b b^-1 a^-1, a^2 >");
    let v = json(&["alexpoly", f.to_str().unwrap()]);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
}

fn presentation_text() -> impl Strategy<Value = String> {
    let word = prop::collection::vec((0usize..3, -2i32..=2), 1..6).prop_map(|letters| {
        letters
            .iter()
            .filter(|(_, e)| *e != 0)
            .map(|(g, e)| format!("{}^{e}", ["a", "b", "c"][*g]))
            .collect::<Vec<_>>()
            .join(" ")
    });
    prop::collection::vec(word, 0..3).prop_map(|rels| {
        let rels: Vec<String> = rels.into_iter().filter(|r| !r.is_empty()).collect();
        format!("< a, b, c | {} >", rels.join(", "))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reports_round_trip(text in presentation_text(), n in 1u64..8, pick in 0usize..7) {
        let dir = tempfile::tempdir().unwrap();
        let path = write(dir.path(), "g.fp", &text);
        let command = [
            Command::Alexmatrix,
            Command::Alexpoly,
            Command::OracleBetti,
            Command::Betti,
            Command::TorsionScan,
            Command::SubtorusCheck,
            Command::RsRewrite,
        ][pick];
        let mut config = RunConfig::new(command, &path);
        config.quotients = vec![format!("a:1 mod {n}").parse().unwrap()];
        config.check_oracle = true;
        config.max_order = 6;
        config.a_max = 1;
        config.b_max = 2;
        config.timing = true;
        let report = run(&config);
        let bytes = serialize_report(&report, Format::Json);
        prop_assert_eq!(parse_report(&bytes).unwrap(), report);
    }
}
