//! Helpers shared by the binary-level test targets.
#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

pub fn qes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qes")).args(args).output().expect("qes runs")
}

/// The output schema with its root pointed at one document type.
pub fn schema_for(definition: &str) -> JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/qes-output.schema.json");
    let mut schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let obj = schema.as_object_mut().unwrap();
    obj.remove("oneOf");
    obj.insert("$ref".into(), Value::String(format!("#/definitions/{definition}")));
    JSONSchema::compile(&schema).expect("schema compiles")
}

/// Schema violations of `text` as `definition`, empty when valid.
pub fn violations(definition: &str, text: &str) -> Vec<String> {
    let doc: Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => return vec![format!("not JSON: {e}")],
    };
    let schema = schema_for(definition);
    let result = schema.validate(&doc);
    match result {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    }
}

pub fn assert_valid(definition: &str, text: &str) {
    let v = violations(definition, text);
    assert!(v.is_empty(), "{definition} output violates the schema:\n{}", v.join("\n"));
}
