//! Shared test support: binary invocation and a minimal JSON-Schema
//! structural validator (type / properties / required / items / enum).
#![allow(dead_code)] // each test target uses a different subset

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn hallsim() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hallsim"))
}

pub fn run_ok(args: &[&str]) -> Output {
    let out = hallsim().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "hallsim {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

pub fn workspace_root() -> PathBuf {
    // crates/cli -> workspace root
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf()
}

pub fn load_schema(name: &str) -> serde_json::Value {
    let path = workspace_root().join("docs/schemas").join(name);
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
    serde_json::from_str(&text).expect("schema parses")
}

/// Validate `value` against the subset of JSON Schema the shipped
/// schemas use. Panics with a path-qualified message on mismatch.
pub fn validate(value: &serde_json::Value, schema: &serde_json::Value, path: &str) {
    use serde_json::Value;

    if let Some(types) = schema.get("type") {
        let allowed: Vec<String> = match types {
            Value::String(s) => vec![s.clone()],
            Value::Array(items) => items
                .iter()
                .map(|v| v.as_str().expect("type entries are strings").to_string())
                .collect(),
            _ => panic!("bad schema type at {path}"),
        };
        let actual = match value {
            Value::Null => "null",
            Value::Bool(_) => "boolean",
            Value::Number(n) => {
                if n.is_i64() || n.is_u64() {
                    "integer"
                } else {
                    "number"
                }
            }
            Value::String(_) => "string",
            Value::Array(_) => "array",
            Value::Object(_) => "object",
        };
        let matches = allowed.iter().any(|t| {
            t == actual || (t == "number" && actual == "integer")
        });
        assert!(
            matches,
            "{path}: expected one of {allowed:?}, found {actual} ({value})"
        );
    }

    if let Some(allowed) = schema.get("enum").and_then(|e| e.as_array()) {
        assert!(
            allowed.contains(value),
            "{path}: value {value} not in enum {allowed:?}"
        );
    }

    if let Some(required) = schema.get("required").and_then(|r| r.as_array()) {
        let obj = value.as_object().unwrap_or_else(|| {
            panic!("{path}: required fields demand an object, found {value}")
        });
        for key in required {
            let key = key.as_str().unwrap();
            assert!(obj.contains_key(key), "{path}: missing required key {key}");
        }
    }

    if let Some(props) = schema.get("properties").and_then(|p| p.as_object()) {
        if let Some(obj) = value.as_object() {
            for (key, sub) in props {
                if let Some(v) = obj.get(key) {
                    validate(v, sub, &format!("{path}.{key}"));
                }
            }
        }
    }

    if let Some(items) = schema.get("items") {
        if let Some(arr) = value.as_array() {
            for (i, v) in arr.iter().enumerate() {
                validate(v, items, &format!("{path}[{i}]"));
            }
        }
    }
}

pub fn validate_file(path: &Path, schema_name: &str) {
    let text = std::fs::read_to_string(path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
    let value: serde_json::Value = serde_json::from_str(&text)
        .unwrap_or_else(|e| panic!("{} is not valid JSON: {e}", path.display()));
    let schema = load_schema(schema_name);
    validate(&value, &schema, "$");
}
