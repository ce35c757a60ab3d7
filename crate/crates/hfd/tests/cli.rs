//! End-to-end tests of the command-line binary: pipelines, exit-code
//! classes, and schema conformance of `--json` reports.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn hfd() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hfd"))
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = hfd()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn hfd");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("wait for hfd")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn catalog(name: &str, n: &str) -> String {
    let out = hfd().args(["catalog", name, "--n", n]).output().unwrap();
    assert!(out.status.success(), "catalog {name} failed");
    stdout_of(&out)
}

#[test]
fn pipeline_catalog_to_d() {
    let model = catalog("s1s2", "2");
    let out = run_with_stdin(&["d", "-", "--subspace", "1,0"], &model);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("d = 0"), "got: {text}");
    assert!(text.contains("d* = 0"), "got: {text}");
}

#[test]
fn roundtrip_is_byte_identical() {
    for (name, n) in [("s1s2", "2"), ("trefoil", "1"), ("example-hyp", "2")] {
        let doc = catalog(name, n);
        // validate echoes nothing; reverse twice returns to the start.
        let out = run_with_stdin(&["validate", "-"], &doc);
        assert!(out.status.success(), "{name} should validate");
        let rev = run_with_stdin(&["reverse", "-"], &doc);
        assert!(rev.status.success());
        let back = run_with_stdin(&["reverse", "-"], &stdout_of(&rev));
        assert!(back.status.success());
        let reparsed = hfd::files::parse_model(&stdout_of(&back)).unwrap();
        let original = hfd::files::parse_model(&doc).unwrap();
        assert_eq!(reparsed.hf_inf, original.hf_inf, "{name} double reverse");
        assert_eq!(reparsed.iminus, original.iminus, "{name} double reverse");
    }
}

#[test]
fn exit_code_usage() {
    let out = hfd().arg("bogus-subcommand").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = hfd().output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_code_validation() {
    let out = run_with_stdin(&["validate", "-"], "{ not json");
    assert_eq!(out.status.code(), Some(2));
    // Structurally valid JSON that fails the model axioms.
    let mut doc: serde_json::Value = serde_json::from_str(&catalog("s1s2", "1")).unwrap();
    doc["promises"]["full_below"] = serde_json::json!("100");
    let out = run_with_stdin(&["validate", "-"], &doc.to_string());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_uncertified() {
    // A window too short for the certification margin.
    let m = hfd::catalog::build_s1s2_windowed(1, hfd::grading::half(-5), hfd::grading::half(5));
    let doc = hfd::files::emit_model(&m).unwrap();
    let out = run_with_stdin(&["d", "-", "--subspace", "1"], &doc);
    assert_eq!(out.status.code(), Some(3));
    assert!(
        stdout_of(&out).contains('?'),
        "uncertified values are marked"
    );
}

#[test]
fn exit_code_mismatched_slice_inputs() {
    let table = r#"{"b1":0,"group":[9],"entries":[]}"#;
    let form = r#"{"group":[25],"pairing":[["1/25"]]}"#;
    let dir = tempfile::tempdir().unwrap();
    let tp = dir.path().join("table.json");
    let fp = dir.path().join("form.json");
    std::fs::write(&tp, table).unwrap();
    std::fs::write(&fp, form).unwrap();
    let out = hfd()
        .args([
            "slice-check",
            "--table",
            tp.to_str().unwrap(),
            "--form",
            fp.to_str().unwrap(),
            "--components",
            "1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_property_failure() {
    // Making I^- full at a single high grading breaks U-shift persistence:
    // the scan's minimum no longer persists upward, which the engine
    // reports as a property failure.
    let mut bad = hfd::catalog::build_example_hyp();
    let g = hfd::grading::grading(1);
    let idx = bad.hf_inf.index_of(g).unwrap();
    bad.iminus[idx] = hfd::intlinalg::SubgroupPresentation::full(bad.hf_inf.rank_at(g));
    let doc = hfd::files::emit_model(&bad).unwrap();
    let out = run_with_stdin(&["d", "-", "--subspace", "0"], &doc);
    assert_eq!(out.status.code(), Some(4), "{:?}", out);
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../../schemas/");
    let text = std::fs::read_to_string(format!("{root}{name}")).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&doc).expect("schema compiles")
}

fn assert_valid(schema: &jsonschema::JSONSchema, text: &str, what: &str) {
    let doc: serde_json::Value =
        serde_json::from_str(text).unwrap_or_else(|e| panic!("{what}: bad json: {e}"));
    let msgs: Vec<String> = match schema.validate(&doc) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| e.to_string()).collect(),
    };
    assert!(
        msgs.is_empty(),
        "{what} violates schema: {}",
        msgs.join("; ")
    );
}

#[test]
fn json_outputs_conform_to_schemas() {
    let model_schema = schema("model.schema.json");
    let report_schema = schema("report.schema.json");

    for (name, n) in [("s1s2", "2"), ("trefoil", "1"), ("example-hyp", "2")] {
        let doc = catalog(name, n);
        assert_valid(&model_schema, &doc, name);
        let rev = run_with_stdin(&["reverse", "-"], &doc);
        assert_valid(&model_schema, &stdout_of(&rev), "reverse");
    }
    let a = catalog("s1s2", "1");
    let dir = tempfile::tempdir().unwrap();
    let ap = dir.path().join("a.json");
    std::fs::write(&ap, &a).unwrap();
    let sum = hfd()
        .args(["connsum", ap.to_str().unwrap(), ap.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(sum.status.success());
    assert_valid(&model_schema, &stdout_of(&sum), "connsum");

    let hyp = catalog("example-hyp", "2");
    for args in [
        vec!["--json", "validate", "-"],
        vec!["--json", "d", "-", "--subspace", "0,1"],
        vec!["--json", "d-table", "-", "--bound", "1"],
        vec!["--json", "props", "-", "--simple", "--bound", "1"],
    ] {
        let out = run_with_stdin(&args, &hyp);
        assert!(out.status.success(), "{args:?}: {:?}", out);
        assert_valid(&report_schema, &stdout_of(&out), &format!("{args:?}"));
    }

    let fp = dir.path().join("form.json");
    std::fs::write(&fp, r#"{"group":[9],"pairing":[["1/9"]]}"#).unwrap();
    let out = hfd()
        .args(["--json", "metabolizers", "--form", fp.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_valid(&report_schema, &stdout_of(&out), "metabolizers");

    let gp = dir.path().join("gram.json");
    std::fs::write(&gp, r#"{"rows":1,"cols":1,"entries":[-1]}"#).unwrap();
    let out = hfd()
        .args(["--json", "lattice", "--gram", gp.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_valid(&report_schema, &stdout_of(&out), "lattice");

    let tp = dir.path().join("table.json");
    let entries: Vec<serde_json::Value> =
        (0..9).map(|t| serde_json::json!([[t], "0", "0"])).collect();
    std::fs::write(
        &tp,
        serde_json::json!({"b1": 0, "group": [9], "entries": entries}).to_string(),
    )
    .unwrap();
    let out = hfd()
        .args([
            "--json",
            "slice-check",
            "--table",
            tp.to_str().unwrap(),
            "--form",
            fp.to_str().unwrap(),
            "--components",
            "1",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{:?}", out);
    assert_valid(&report_schema, &stdout_of(&out), "slice-check");
}

#[test]
fn d_table_matches_closed_form() {
    let model = catalog("s1s2", "2");
    let out = run_with_stdin(&["--json", "d-table", "-", "--bound", "2"], &model);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    for e in doc["results"]["entries"].as_array().unwrap() {
        let rank = e["rank"].as_u64().unwrap() as i64;
        let d = hfd::grading::parse_grading(e["d"].as_str().unwrap()).unwrap();
        assert_eq!(d, hfd::grading::grading(1) - hfd::grading::grading(rank));
    }
}
