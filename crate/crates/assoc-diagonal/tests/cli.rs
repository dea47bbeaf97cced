//! The `assocdiag` binary: outputs, exit codes and the JSON schema.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_assocdiag"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn face_listings() {
    let edges = stdout(&["faces", "--n", "4", "--dim", "1"]);
    let lines: Vec<&str> = edges.lines().collect();
    assert_eq!(
        lines,
        ["d_(0,1)", "d_(0,2)", "d_(1,1)", "d_(1,2)", "d_(2,1)"]
    );
    assert_eq!(
        stdout(&["faces", "--n", "4", "--dim", "2"]).lines().count(),
        1
    );
    assert_eq!(
        stdout(&["faces", "--n", "5", "--dim", "0"]).lines().count(),
        14
    );
}

#[test]
fn diagonal_listings() {
    let k4 = stdout(&["diagonal", "--n", "4"]);
    assert_eq!(k4.lines().count(), 6);
    assert!(k4.lines().any(|l| l == "- d_(0,1) ⊗ d_(2,1)"));
    assert_eq!(stdout(&["diagonal", "--n", "5"]).lines().count(), 22);
}

#[test]
fn boundary_of_a_square() {
    let out = stdout(&["boundary", "--n", "5", "--face", "d_(1,2)"]);
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn tensor_operations() {
    let psi3 = stdout(&["tensor-ops", "--side", "coalg", "--n", "3"]);
    assert!(psi3.starts_with("Ψ³ = σ"), "{psi3}");
    assert!(psi3.contains("(ψ₀²ψ₀²⊗ψ³ + ψ³⊗ψ₁²ψ₀²)"), "{psi3}");
    let phi3 = stdout(&["tensor-ops", "--side", "alg", "--n", "3"]);
    assert!(phi3.starts_with("Φ³"), "{phi3}");
}

#[test]
fn tamari_exports() {
    let dot = stdout(&["tamari", "--n", "5", "--dot"]);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("[label=").count(), 14);
    assert_eq!(dot.matches(" -> ").count(), 21);
    assert_eq!(stdout(&["tamari", "--n", "4"]).lines().count(), 5);
}

#[test]
fn verify_passes_and_prints_a_certificate() {
    let cert = json(&["verify", "--suite", "dsquare", "--max-n", "3"]);
    assert_eq!(cert["kind"], "certificate");
    assert_eq!(cert["passed"], true);
    assert_eq!(cert["suites"], serde_json::json!(["dsquare"]));
}

#[test]
fn verification_failure_exits_with_one() {
    let out = run(&[
        "verify",
        "--suite",
        "chainmap",
        "--max-n",
        "2",
        "--flip-sign",
        "4,0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let cert: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert["passed"], false);
    let failing: Vec<&Value> = cert["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .collect();
    assert!(failing[0]["counterexample"]
        .as_str()
        .unwrap()
        .contains("of K4"));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("FAIL chainmap"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["faces", "--n", "4"][..],
        &["faces", "--n", "1", "--dim", "0"],
        &["faces", "--n", "4", "--dim", "1", "--format", "yaml"],
        &["diagonal", "--n", "abc"],
        &["boundary", "--n", "4", "--face", "d_(5,1)"],
        &["tensor-ops", "--side", "both", "--n", "3"],
        &["tamari", "--n", "1"],
        &["verify", "--suite", "everything"],
        &["verify", "--max-n", "8"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

fn schema() -> Value {
    let path = format!(
        "{}/../../schema/assocdiag.schema.json",
        env!("CARGO_MANIFEST_DIR")
    );
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Required keys are present and no key falls outside the declared properties.
fn conforms(doc: &Value, def: &Value) -> Result<(), String> {
    let obj = doc.as_object().ok_or("not an object")?;
    for key in def["required"].as_array().unwrap() {
        let key = key.as_str().unwrap();
        if !obj.contains_key(key) {
            return Err(format!("missing {key}"));
        }
    }
    let props = def["properties"].as_object().unwrap();
    for (key, value) in obj {
        let prop = props.get(key).ok_or(format!("undeclared {key}"))?;
        if let Some(c) = prop.get("const") {
            if c != value {
                return Err(format!("{key} = {value}, expected {c}"));
            }
        }
        if let (Some(items), Some(array)) = (prop.get("items"), value.as_array()) {
            if items.get("properties").is_some() {
                for item in array {
                    conforms(item, items).map_err(|e| format!("{key}[]: {e}"))?;
                }
            }
        }
    }
    Ok(())
}

#[test]
fn json_outputs_follow_the_schema() {
    let schema = schema();
    let defs = &schema["$defs"];
    let cases = [
        (
            "faces",
            vec!["faces", "--n", "5", "--dim", "1", "--format", "json"],
        ),
        (
            "diagonal",
            vec![
                "diagonal",
                "--n",
                "5",
                "--format",
                "json",
                "--notation",
                "tree",
            ],
        ),
        (
            "boundary",
            vec![
                "boundary", "--n", "5", "--face", "d_(1,2)", "--format", "json",
            ],
        ),
        (
            "tensorOps",
            vec![
                "tensor-ops",
                "--side",
                "alg",
                "--n",
                "4",
                "--format",
                "json",
            ],
        ),
        (
            "certificate",
            vec!["verify", "--suite", "appendix", "--max-n", "2"],
        ),
    ];
    for (def, args) in cases {
        let doc = json(&args);
        conforms(&doc, &defs[def]).unwrap_or_else(|e| panic!("{def}: {e}"));
        let refs: Vec<&str> = schema["oneOf"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["$ref"].as_str().unwrap())
            .collect();
        assert!(refs.contains(&format!("#/$defs/{def}").as_str()));
    }
}
