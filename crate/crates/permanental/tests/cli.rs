//! End-to-end checks of the binary: exit codes, text output, seed
//! determinism, and validation of every JSON document kind against the
//! shipped schema.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permanental"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

// --- a small structural validator for the shipped JSON schema ------------

fn schema() -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../schema/cli-output.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).expect("schema readable"))
        .expect("schema parses")
}

fn matches_pattern(pattern: &str, s: &str) -> bool {
    match pattern {
        "^-?[0-9]+(/[0-9]+)?$" => {
            let body = s.strip_prefix('-').unwrap_or(s);
            let mut parts = body.splitn(2, '/');
            let num = parts.next().unwrap_or("");
            let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
            digits(num) && parts.next().is_none_or(digits)
        }
        "^[01]+$" => !s.is_empty() && s.bytes().all(|b| b == b'0' || b == b'1'),
        "^[01|]+$" => !s.is_empty() && s.bytes().all(|b| b == b'0' || b == b'1' || b == b'|'),
        other => panic!("validator does not know pattern {other:?}"),
    }
}

fn validate(schema_node: &Value, doc: &Value, root: &Value) -> Result<(), String> {
    if let Some(reference) = schema_node.get("$ref").and_then(Value::as_str) {
        let name = reference
            .strip_prefix("#/definitions/")
            .ok_or_else(|| format!("unsupported $ref {reference}"))?;
        let target = &root["definitions"][name];
        return validate(target, doc, root);
    }
    if let Some(variants) = schema_node.get("oneOf").and_then(Value::as_array) {
        let hits = variants
            .iter()
            .filter(|v| validate(v, doc, root).is_ok())
            .count();
        return if hits == 1 {
            Ok(())
        } else {
            Err(format!("{hits} oneOf variants matched"))
        };
    }
    if let Some(allowed) = schema_node.get("enum").and_then(Value::as_array) {
        if !allowed.contains(doc) {
            return Err(format!("{doc} not in enum"));
        }
        return Ok(());
    }
    match schema_node.get("type") {
        Some(Value::String(t)) => check_type(t, doc)?,
        Some(Value::Array(ts)) => {
            if !ts
                .iter()
                .filter_map(Value::as_str)
                .any(|t| check_type(t, doc).is_ok())
            {
                return Err(format!("{doc} matches none of {ts:?}"));
            }
        }
        _ => {}
    }
    if let Some(pattern) = schema_node.get("pattern").and_then(Value::as_str) {
        let s = doc.as_str().ok_or("pattern on non-string")?;
        if !matches_pattern(pattern, s) {
            return Err(format!("{s:?} does not match {pattern}"));
        }
    }
    if let Some(obj) = doc.as_object() {
        if let Some(required) = schema_node.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !obj.contains_key(key) {
                    return Err(format!("missing required key {key}"));
                }
            }
        }
        let props = schema_node.get("properties").and_then(Value::as_object);
        if let Some(props) = props {
            for (key, value) in obj {
                match props.get(key) {
                    Some(subschema) => validate(subschema, value, root)
                        .map_err(|e| format!("{key}: {e}"))?,
                    None => {
                        if schema_node.get("additionalProperties") == Some(&Value::Bool(false)) {
                            return Err(format!("unexpected key {key}"));
                        }
                    }
                }
            }
        }
    }
    if let Some(items) = schema_node.get("items") {
        if let Some(arr) = doc.as_array() {
            for (i, item) in arr.iter().enumerate() {
                validate(items, item, root).map_err(|e| format!("[{i}]: {e}"))?;
            }
        }
    }
    Ok(())
}

fn check_type(t: &str, doc: &Value) -> Result<(), String> {
    let ok = match t {
        "object" => doc.is_object(),
        "array" => doc.is_array(),
        "string" => doc.is_string(),
        "integer" => doc.is_i64() || doc.is_u64(),
        "number" => doc.is_number(),
        "boolean" => doc.is_boolean(),
        "null" => doc.is_null(),
        other => return Err(format!("unknown type {other}")),
    };
    if ok {
        Ok(())
    } else {
        Err(format!("expected {t}, got {doc}"))
    }
}

fn assert_valid_json_line(line: &str) {
    let doc: Value = serde_json::from_str(line).unwrap_or_else(|e| panic!("bad JSON {line}: {e}"));
    let schema = schema();
    validate(&schema, &doc, &schema).unwrap_or_else(|e| panic!("schema violation in {line}: {e}"));
}

// --- behavioral checks ----------------------------------------------------

#[test]
fn normalizer_prints_the_known_value() {
    let out = run(&["pgm", "z", "--n", "2", "--alpha", "1", "--beta", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "8");

    let brute = run(&["pgm", "z", "--n", "2", "--alpha", "1", "--beta", "1", "--brute"]);
    assert_eq!(stdout(&brute).trim(), "8");

    let json = run(&["pgm", "z", "--n", "3", "--alpha", "2", "--beta", "1/2", "--format", "json"]);
    let line = stdout(&json);
    assert_valid_json_line(line.trim());
    let doc: Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(doc["value"], "2187/64");
}

#[test]
fn permanent_poly_and_value() {
    let out = run(&["permanent", "--poly", &fixture("g1.txt")]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "1\n1\n0\n0\n");

    let json = run(&["permanent", "--poly", "--json", &fixture("g1.txt")]);
    assert_eq!(stdout(&json).trim(), r#"["1","1","0","0"]"#);
    assert_valid_json_line(stdout(&json).trim());

    let value = run(&["permanent", "--alpha", "2", &fixture("g1.txt")]);
    assert_eq!(stdout(&value).trim(), "6");
    let brute = run(&["permanent", "--alpha", "2", "--brute", &fixture("g1.txt")]);
    assert_eq!(stdout(&brute).trim(), "6");

    let json_value = run(&["permanent", "--alpha", "7/3", "--format", "json", &fixture("g1.txt")]);
    assert_valid_json_line(stdout(&json_value).trim());
}

#[test]
fn projection_of_the_worked_example() {
    let ss = run(&["project", "--op", "ss", &fixture("perm_123.txt")]);
    assert_eq!(stdout(&ss).trim(), "2\n01\n00");
    let dr = run(&["project", "--op", "dr", &fixture("perm_123.txt")]);
    assert_eq!(stdout(&dr).trim(), "2\n01\n10");
    let json = run(&["project", "--op", "dr", "--format", "json", &fixture("perm_123.txt")]);
    assert_valid_json_line(stdout(&json).trim());
}

#[test]
fn preimage_counts_and_listing() {
    let ss = run(&["preimages", "--op", "ss", "--count-only", &fixture("g1.txt")]);
    assert_eq!(stdout(&ss).trim(), "512"); // 2^(2*4+1)

    let dr = run(&["preimages", "--op", "dr", "--count-only", &fixture("g1.txt")]);
    assert_eq!(stdout(&dr).trim(), "170");

    let bearing = run(&[
        "preimages", "--op", "dr", "--require-permutation", "--count-only", &fixture("g1.txt"),
    ]);
    assert_eq!(stdout(&bearing).trim(), "135");

    let json = run(&[
        "preimages", "--op", "dr", "--require-permutation", "--count-only",
        "--format", "json", &fixture("g2.txt"),
    ]);
    assert_valid_json_line(stdout(&json).trim());
    let doc: Value = serde_json::from_str(stdout(&json).trim()).unwrap();
    assert_eq!(doc["count"], 159);

    let listing = run(&[
        "preimages", "--op", "dr", "--require-permutation", "--format", "json",
        &fixture("g1.txt"),
    ]);
    assert_valid_json_line(stdout(&listing).trim());

    // Text listing: one graph block per member, blank-line separated.
    let text = run(&["preimages", "--op", "dr", &fixture("perm_123.txt")]);
    let listing_text = stdout(&text);
    let blocks: Vec<&str> = listing_text.trim().split("\n\n").collect();
    let count = run(&["preimages", "--op", "dr", "--count-only", &fixture("perm_123.txt")]);
    assert_eq!(blocks.len().to_string(), stdout(&count).trim());
}

#[test]
fn crp_check_dr_passes_and_reports() {
    let out = run(&["crp", "check-dr", "--n", "5", "--alpha", "7/3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "PASS");

    let json = run(&["crp", "check-dr", "--n", "4", "--alpha", "1/2", "--format", "json"]);
    assert_valid_json_line(stdout(&json).trim());
    let doc: Value = serde_json::from_str(stdout(&json).trim()).unwrap();
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["witness"], Value::Null);
}

#[test]
fn consistency_check_exit_codes_and_witness() {
    // The full-support model fails with the certificate pair at n = 4.
    let fail = run(&["consistency", "check", "--op", "dr", "--family", "all", "--n", "4"]);
    assert_eq!(code(&fail), 1);
    let text = stdout(&fail);
    assert!(text.starts_with("FAIL"));
    assert!(text.contains("G1") && text.contains("G2"));

    // The Ewens family passes.
    let pass = run(&[
        "consistency", "check", "--op", "dr", "--family", "permutations",
        "--n", "4", "--alpha", "7/3",
    ]);
    assert_eq!(code(&pass), 0);
    assert_eq!(stdout(&pass).trim(), "PASS");

    // Subselection on permutations leaks mass at n = 2 (the 3-cycle's
    // truncation is not a permutation matrix).
    let leak = run(&[
        "consistency", "check", "--op", "ss", "--family", "permutations", "--n", "2",
    ]);
    assert_eq!(code(&leak), 1);
    assert!(stdout(&leak).contains("outside the family"));

    for args in [
        vec!["consistency", "check", "--op", "dr", "--family", "all", "--n", "4", "--format", "json"],
        vec!["consistency", "check", "--op", "dr", "--family", "permutations", "--n", "3", "--format", "json"],
    ] {
        let out = run(&args);
        assert_valid_json_line(stdout(&out).trim());
    }
}

#[test]
fn certificate_output_is_canonical() {
    let text = run(&["consistency", "certificate"]);
    assert_eq!(code(&text), 0);
    let lines: Vec<String> = stdout(&text).lines().map(String::from).collect();
    // Beta-major, alpha-minor: first monomials at beta^8.
    assert_eq!(lines[0], "b^8 a^1: 1");
    assert_eq!(lines[1], "b^8 a^2: 1");
    assert_eq!(lines[2], "b^9 a^1: 4");

    let json = run(&["consistency", "certificate", "--format", "json"]);
    assert_valid_json_line(stdout(&json).trim());
    let doc: Value = serde_json::from_str(stdout(&json).trim()).unwrap();
    assert_eq!(doc["terms"][0], serde_json::json!({"a": 1, "b": 8, "c": "1"}));
    assert_eq!(doc["refutes_for_all_parameters"], true);
}

#[test]
fn ss_chain_json_validates() {
    let out = run(&["consistency", "ss-chain", "--n", "3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_valid_json_line(stdout(&out).trim());
}

#[test]
fn sampling_is_seed_deterministic_and_schema_clean() {
    let args = [
        "pgm", "sample", "--n", "6", "--alpha", "3/2", "--beta", "1/3",
        "--seed", "99", "--count", "5", "--format", "json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout, "same seed must replay identically");
    for line in stdout(&a).lines() {
        assert_valid_json_line(line);
    }

    let crp = run(&[
        "crp", "sample", "--n", "6", "--alpha", "1/2", "--kind", "partition",
        "--seed", "3", "--count", "4", "--format", "json",
    ]);
    for line in stdout(&crp).lines() {
        assert_valid_json_line(line);
    }
    let perms = run(&[
        "crp", "sample", "--n", "6", "--alpha", "2", "--kind", "permutation",
        "--seed", "3", "--count", "4", "--format", "json",
    ]);
    for line in stdout(&perms).lines() {
        assert_valid_json_line(line);
    }
}

#[test]
fn degree_table_formats() {
    let out = run(&["pgm", "degree", "--n", "4", "--beta", "1", "--k", "2"]);
    assert_eq!(stdout(&out).trim(), "2 3/8");

    let json = run(&["pgm", "degree", "--n", "4", "--beta", "1/2", "--format", "json"]);
    assert_valid_json_line(stdout(&json).trim());

    let emp = run(&[
        "pgm", "degree", "--n", "3", "--beta", "1", "--empirical",
        "--samples", "2000", "--seed", "1", "--format", "json",
    ]);
    assert_valid_json_line(stdout(&emp).trim());

    let csv = run(&["pgm", "degree", "--n", "3", "--beta", "1", "--format", "csv"]);
    let text = stdout(&csv);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,value"));
    assert_eq!(lines.next(), Some("0,1/4"));
}

#[test]
fn error_paths_exit_two_with_distinct_messages() {
    // Unknown flag: usage error from the parser.
    let usage = run(&["pgm", "z", "--n", "2", "--bogus"]);
    assert_eq!(code(&usage), 2);

    // Unreadable file.
    let missing = run(&["permanent", "--alpha", "1", "/nonexistent/graph.txt"]);
    assert_eq!(code(&missing), 2);
    assert!(String::from_utf8_lossy(&missing.stderr).contains("cannot read"));

    // Malformed graph.
    let dir = std::env::temp_dir().join("permanental-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "2\n01\n2x\n").unwrap();
    let malformed = run(&["permanent", "--alpha", "1", bad.to_str().unwrap()]);
    assert_eq!(code(&malformed), 2);
    assert!(String::from_utf8_lossy(&malformed.stderr).contains("parse error"));

    // Nonpositive model parameters are rejected with the positivity rule.
    let nonpositive = run(&["pgm", "z", "--n", "2", "--alpha", "0", "--beta", "1"]);
    assert_eq!(code(&nonpositive), 2);
    assert!(String::from_utf8_lossy(&nonpositive.stderr).contains("positive"));
    let negative = run(&["pgm", "z", "--n", "2", "--alpha", "1", "--beta", "-1/2"]);
    assert_eq!(code(&negative), 2);

    // Capacity violations.
    let capacity = run(&["pgm", "z", "--n", "5", "--brute"]);
    assert_eq!(code(&capacity), 2);
    assert!(String::from_utf8_lossy(&capacity.stderr).contains("supports n <="));

    // A single-vertex graph cannot be projected.
    let tiny = dir.join("tiny.txt");
    std::fs::write(&tiny, "1\n1\n").unwrap();
    let underflow = run(&["project", "--op", "dr", tiny.to_str().unwrap()]);
    assert_eq!(code(&underflow), 2);
}

#[test]
fn out_flag_writes_the_file() {
    let dir = std::env::temp_dir().join("permanental-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("samples.jsonl");
    let _ = std::fs::remove_file(&path);
    let out = run(&[
        "pgm", "sample", "--n", "4", "--seed", "5", "--count", "3",
        "--format", "json", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 3);
    for line in written.lines() {
        assert_valid_json_line(line);
    }
}
