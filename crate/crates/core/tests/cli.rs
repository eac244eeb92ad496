//! The `ltl-qbe` binary: exit codes, JSON output and input errors.

use std::path::PathBuf;
use std::process::{Command, Output};

use ltl_qbe::logic::{parse_query, DataInstance, ExampleSet};
use ltl_qbe::qbe::{separates, Ontology};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ltl-qbe"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ltl-qbe-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn sensor_example_is_separable_with_a_verified_query() {
    let input = data("example1.json");
    let out = run(&["separable", "--class", "path-diamond", "--input", input.to_str().unwrap(), "--emit-query"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["separable"], Value::Bool(true));
    let q = parse_query(v["witness"].as_str().unwrap()).unwrap();
    let e = ExampleSet::parse(&["T@2, V@4", "T@1, V@4"], &["T@1", "V@4", "V@1, T@2"]).unwrap();
    assert!(separates(&e, &Ontology::None, &q).unwrap(), "{q}");
}

#[test]
fn heater_example_needs_the_ontology() {
    let input = data("example1_heater.json");
    let onto = data("heater.ltl");
    let bare = run(&["separable", "--class", "path-diamond", "--input", input.to_str().unwrap()]);
    assert_eq!(bare.status.code(), Some(1));
    let with = run(&[
        "separable",
        "--class",
        "path-diamond",
        "--input",
        input.to_str().unwrap(),
        "--ontology",
        onto.to_str().unwrap(),
        "--oracle-check",
    ]);
    assert_eq!(with.status.code(), Some(0), "{}", String::from_utf8_lossy(&with.stderr));
}

#[test]
fn unordered_events_are_separated_by_nested_eventually() {
    // Both deciders find `F F T`; see the README on this example.
    let input = data("example2.json");
    let out = run(&["separable", "--class", "path-diamond", "--input", input.to_str().unwrap(), "--oracle-check"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["separable", "--class", "branch-diamond", "--input", input.to_str().unwrap(), "--emit-query"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn malformed_json_reports_its_position() {
    let p = temp_file("bad.json", "{\"format\": 1,\n \"positives\": [\n");
    let out = run(&["separable", "--class", "path-diamond", "--input", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line") && err.contains("column"), "{err}");
}

#[test]
fn unknown_format_and_signature_violations_are_input_errors() {
    let p = temp_file("v2.json", r#"{"format": 2, "positives": []}"#);
    assert_eq!(run(&["separable", "--class", "path-diamond", "--input", p.to_str().unwrap()]).status.code(), Some(2));
    let p = temp_file("sig.json", r#"{"format": 1, "signature": ["A"], "positives": [{"facts": [["B", 1]]}]}"#);
    assert_eq!(run(&["separable", "--class", "path-diamond", "--input", p.to_str().unwrap()]).status.code(), Some(2));
    let p = temp_file("nopos.json", r#"{"format": 1, "positives": [], "negatives": [{"facts": [["B", 1]]}]}"#);
    assert_eq!(run(&["separable", "--class", "path-diamond", "--input", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn unknown_class_is_a_usage_error() {
    let input = data("example1.json");
    assert_eq!(run(&["separable", "--class", "nonsense", "--input", input.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn eval_answers_and_exit_codes() {
    let d = data("run.json");
    let d = d.to_str().unwrap();
    let yes = run(&["eval", "--query", "F(T & F V)", "--data", d]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&yes.stdout).trim(), "true");
    let no = run(&["eval", "--query", "F(V & F T)", "--data", d]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&no.stdout).trim(), "false");
    assert_eq!(run(&["eval", "--query", "true", "--data", d]).status.code(), Some(0));
    assert_eq!(run(&["eval", "--query", "T", "--data", d, "--at", "2"]).status.code(), Some(0));
    assert_eq!(run(&["eval", "--query", "F(", "--data", d]).status.code(), Some(2));
}

#[test]
fn eval_under_the_heater_axiom() {
    let p = temp_file("h.json", r#"{"format": 1, "facts": [["H", 3], ["V", 4]]}"#);
    let onto = data("heater.ltl");
    let args = ["eval", "--query", "F(T & F F V)", "--data", p.to_str().unwrap()];
    assert_eq!(run(&args).status.code(), Some(1));
    let mut with = args.to_vec();
    with.extend(["--ontology", onto.to_str().unwrap()]);
    assert_eq!(run(&with).status.code(), Some(0));
}

#[test]
fn prior_eval_after_time_zero_is_unsupported() {
    let d = data("run.json");
    let o = temp_file("p.ltl", "T -> F V\n");
    let out = run(&[
        "eval",
        "--query",
        "F V",
        "--data",
        d.to_str().unwrap(),
        "--ontology",
        o.to_str().unwrap(),
        "--ontology-kind",
        "prior",
        "--at",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn canonical_model_output() {
    let out = run(&[
        "canonical",
        "--ontology",
        data("abc.ltl").to_str().unwrap(),
        "--data",
        data("abc_data.json").to_str().unwrap(),
        "--window",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["consistent"], Value::Bool(true));
    assert_eq!(v["p"], Value::from(2));
    assert!(v["s"].as_u64().is_some());
    let window: Vec<Vec<String>> = serde_json::from_value(v["window"].clone()).unwrap();
    assert_eq!(window[0], vec!["A", "C"]);
    assert_eq!(window[1], vec!["B"]);
    assert_eq!(window[2], vec!["C"]);
    assert_eq!(window[3], vec!["B"]);
}

#[test]
fn canonical_model_of_the_empty_ontology_has_period_one() {
    let o = temp_file("empty.ltl", "# nothing\n");
    let out = run(&["canonical", "--ontology", o.to_str().unwrap(), "--data", data("run.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["p"], Value::from(1));
}

#[test]
fn canonical_reports_inconsistency() {
    let o = temp_file("bot.ltl", "T -> false\n");
    let out = run(&["canonical", "--ontology", o.to_str().unwrap(), "--data", data("run.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["consistent"], Value::Bool(false));
}

fn word(w: &str) -> DataInstance {
    let facts: Vec<(String, usize)> = w.chars().enumerate().map(|(i, c)| (c.to_string(), i + 1)).collect();
    DataInstance::new(w, facts).unwrap()
}

#[test]
fn words_with_a_common_subsequence() {
    let out = run(&["from-words", "--positives", "ab,cab", "--negatives", "ba"]);
    assert_eq!(out.status.code(), Some(0));
    let q = parse_query(json(&out)["witness"].as_str().unwrap()).unwrap();
    let e = ExampleSet::new(vec![word("ab"), word("cab")], vec![word("ba")]);
    assert!(separates(&e, &Ontology::None, &q).unwrap(), "{q}");
}

#[test]
fn identical_words_cannot_be_separated() {
    for mode in ["subsequence", "subword"] {
        let out = run(&["from-words", "--positives", "abc", "--negatives", "abc", "--mode", mode]);
        assert_eq!(out.status.code(), Some(1), "{mode}");
    }
}

#[test]
fn single_letter_words() {
    assert_eq!(run(&["from-words", "--positives", "a", "--negatives", "b"]).status.code(), Some(0));
    assert_eq!(run(&["from-words", "--positives", "a,b", "--negatives", "c"]).status.code(), Some(1));
    assert_eq!(run(&["from-words", "--positives", ""]).status.code(), Some(2));
}

#[test]
fn subwords_are_contiguous() {
    // `ab` is a subsequence of `acb` but not a subword of it.
    assert_eq!(run(&["from-words", "--positives", "ab", "--negatives", "acb", "--mode", "subword"]).status.code(), Some(0));
    assert_eq!(run(&["from-words", "--positives", "ab", "--negatives", "acb"]).status.code(), Some(1));
}
