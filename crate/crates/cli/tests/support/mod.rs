//! Shared helpers for the CLI test suites: running the binary, locating
//! repo files, and validating JSON output against the shipped schema.

use std::path::PathBuf;
use std::process::{Command, Output};

use regex::Regex;
use serde_json::Value;

pub fn mapdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mapdeg"))
        .args(args)
        .output()
        .expect("run mapdeg")
}

pub fn stdout_str(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

/// Repository root (two levels above the cli crate).
pub fn repo_path(relative: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(relative)
}

pub fn load_schema() -> Value {
    let text = std::fs::read_to_string(repo_path("schema/report.schema.json"))
        .expect("schema file is committed");
    serde_json::from_str(&text).expect("schema file is valid JSON")
}

/// Minimal JSON Schema checker covering the subset the shipped schema uses:
/// $ref into #/definitions, oneOf, const, enum, type (including unions),
/// pattern, properties/required/additionalProperties, items.
pub fn validate(root: &Value, schema: &Value, value: &Value, path: &str) -> Result<(), String> {
    if let Some(reference) = schema.get("$ref").and_then(Value::as_str) {
        let target = resolve_ref(root, reference)
            .ok_or_else(|| format!("{path}: unresolvable $ref {reference}"))?;
        return validate(root, target, value, path);
    }
    if let Some(variants) = schema.get("oneOf").and_then(Value::as_array) {
        let mut failures = Vec::new();
        let mut matches = 0;
        for variant in variants {
            match validate(root, variant, value, path) {
                Ok(()) => matches += 1,
                Err(e) => failures.push(e),
            }
        }
        return match matches {
            1 => Ok(()),
            0 => Err(format!(
                "{path}: no oneOf variant matched ({})",
                failures.join(" | ")
            )),
            n => Err(format!("{path}: {n} oneOf variants matched")),
        };
    }
    if let Some(expected) = schema.get("const") {
        if value != expected {
            return Err(format!("{path}: expected const {expected}, got {value}"));
        }
    }
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            return Err(format!("{path}: {value} not in enum {allowed:?}"));
        }
    }
    if let Some(type_spec) = schema.get("type") {
        let names: Vec<&str> = match type_spec {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => return Err(format!("{path}: malformed type specifier")),
        };
        if !names.iter().any(|n| type_matches(n, value)) {
            return Err(format!("{path}: value {value} has none of types {names:?}"));
        }
    }
    if let Some(pattern) = schema.get("pattern").and_then(Value::as_str) {
        let text = value
            .as_str()
            .ok_or_else(|| format!("{path}: pattern applies to strings only"))?;
        let re = Regex::new(pattern).expect("schema patterns are valid regexes");
        if !re.is_match(text) {
            return Err(format!("{path}: {text:?} does not match {pattern}"));
        }
    }
    if let Some(object) = value.as_object() {
        if let Some(properties) = schema.get("properties").and_then(Value::as_object) {
            for (key, subschema) in properties {
                if let Some(subvalue) = object.get(key) {
                    validate(root, subschema, subvalue, &format!("{path}/{key}"))?;
                }
            }
            if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
                for key in object.keys() {
                    if !properties.contains_key(key) {
                        return Err(format!("{path}: unexpected property {key:?}"));
                    }
                }
            }
        }
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !object.contains_key(key) {
                    return Err(format!("{path}: missing required property {key:?}"));
                }
            }
        }
    }
    if let Some(items) = schema.get("items") {
        if let Some(array) = value.as_array() {
            for (i, item) in array.iter().enumerate() {
                validate(root, items, item, &format!("{path}[{i}]"))?;
            }
        }
    }
    Ok(())
}

fn resolve_ref<'a>(root: &'a Value, reference: &str) -> Option<&'a Value> {
    let mut node = root;
    for segment in reference.strip_prefix("#/")?.split('/') {
        node = node.get(segment)?;
    }
    Some(node)
}

fn type_matches(name: &str, value: &Value) -> bool {
    match name {
        "null" => value.is_null(),
        "boolean" => value.is_boolean(),
        "string" => value.is_string(),
        "integer" => value.is_i64() || value.is_u64(),
        "number" => value.is_number(),
        "array" => value.is_array(),
        "object" => value.is_object(),
        _ => false,
    }
}

/// Validate one emitted JSON line against the shipped schema.
pub fn assert_schema_valid(schema: &Value, line: &str) {
    let value: Value =
        serde_json::from_str(line).unwrap_or_else(|e| panic!("invalid JSON: {e}\n{line}"));
    validate(schema, schema, &value, "$")
        .unwrap_or_else(|e| panic!("schema violation: {e}\n{line}"));
}

/// The expressions of the shipped census corpus (comments stripped).
pub fn corpus_lines() -> Vec<String> {
    let text = std::fs::read_to_string(repo_path("corpus/census12.txt"))
        .expect("corpus file is committed");
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with("--"))
        .map(str::to_string)
        .collect()
}
