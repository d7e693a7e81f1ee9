//! CLI test support: binary invocation, a minimal JSON Schema validator
//! covering the subset the shipped schemas use, and timing-field stripping
//! for byte-level output comparisons.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_apnfield"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn run_json(args: &[&str]) -> (Value, Output) {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: status {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "command {args:?} produced invalid JSON: {e}\n{}",
            String::from_utf8_lossy(&out.stdout)
        )
    });
    (v, out)
}

pub fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

pub fn load_schema(name: &str) -> Value {
    let path = schema_dir().join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(&path).unwrap_or_else(|e| {
        panic!("schema {} unreadable: {e}", path.display());
    }))
    .expect("schema parses")
}

/// Validate `value` against the subset of JSON Schema the shipped schemas
/// use: type (including union with null), properties/required/
/// additionalProperties, items, enum, minimum, and the lowercase-hex
/// pattern.
pub fn validate(schema: &Value, value: &Value, path: &str) -> Result<(), String> {
    if let Some(types) = schema.get("type") {
        let names: Vec<&str> = match types {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(|v| v.as_str()).collect(),
            _ => vec![],
        };
        let matches = names.iter().any(|t| match *t {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.is_i64() || value.is_u64(),
            "number" => value.is_number(),
            "boolean" => value.is_boolean(),
            "null" => value.is_null(),
            _ => false,
        });
        if !matches {
            return Err(format!("{path}: expected type {names:?}, got {value}"));
        }
    }
    if let Some(en) = schema.get("enum").and_then(Value::as_array) {
        if !en.contains(value) {
            return Err(format!("{path}: {value} not in enum {en:?}"));
        }
    }
    if let Some(pattern) = schema.get("pattern").and_then(Value::as_str) {
        assert_eq!(pattern, "^[0-9a-f]+$", "only the hex pattern is supported");
        let s = value.as_str().unwrap_or_default();
        if s.is_empty() || !s.chars().all(|c| c.is_ascii_hexdigit() && !c.is_uppercase()) {
            return Err(format!("{path}: {value} is not lowercase hex"));
        }
    }
    if let Some(min) = schema.get("minimum").and_then(Value::as_i64) {
        if let Some(x) = value.as_i64() {
            if x < min {
                return Err(format!("{path}: {x} below minimum {min}"));
            }
        }
    }
    if let Some(obj) = value.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !obj.contains_key(key) {
                    return Err(format!("{path}: missing required key {key:?}"));
                }
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        let additional = schema.get("additionalProperties");
        for (key, child) in obj {
            let child_path = format!("{path}.{key}");
            if let Some(child_schema) = props.and_then(|p| p.get(key)) {
                validate(child_schema, child, &child_path)?;
            } else {
                match additional {
                    Some(Value::Bool(false)) => {
                        return Err(format!("{path}: unexpected key {key:?}"))
                    }
                    Some(Value::Object(_)) => {
                        validate(additional.unwrap(), child, &child_path)?
                    }
                    _ => {}
                }
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), value.as_array()) {
        for (i, child) in arr.iter().enumerate() {
            validate(items, child, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

pub fn assert_schema(name: &str, value: &Value) {
    let schema = load_schema(name);
    if let Err(e) = validate(&schema, value, "$") {
        panic!("schema {name} violated: {e}\nvalue: {value:#}");
    }
}

/// Strip timing fields everywhere for deterministic comparisons.
pub fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.retain(|k, _| k != "elapsed_ms" && k != "timings_ms");
            for (_, child) in map.iter_mut() {
                strip_timings(child);
            }
        }
        Value::Array(items) => {
            for item in items {
                strip_timings(item);
            }
        }
        _ => {}
    }
}
