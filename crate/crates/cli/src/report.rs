//! The JSON envelope every command produces.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_NAME: &str = "noloop";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

impl Tool {
    pub fn current() -> Self {
        Tool { name: TOOL_NAME.to_string(), version: env!("CARGO_PKG_VERSION").to_string() }
    }
}

/// The settings a result depends on. Rerunning with the same provenance
/// reproduces the document byte for byte.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub input: String,
    pub algebra: Option<String>,
    pub field: String,
    pub seed: u64,
    pub depth: usize,
    pub cap: usize,
    pub cycle_max: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandRecord {
    pub name: String,
    pub arguments: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool: Tool,
    pub provenance: Provenance,
    pub command: CommandRecord,
    pub result: Value,
}

/// Recursively sorts object keys so output does not depend on map internals.
pub fn canonical(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, x) in entries {
                out.insert(k, canonical(x));
            }
            Value::Object(out)
        }
        Value::Array(xs) => Value::Array(xs.into_iter().map(canonical).collect()),
        other => other,
    }
}

impl ReportDocument {
    pub fn to_value(&self) -> Value {
        canonical(serde_json::to_value(self).expect("report documents serialize"))
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_come_out_sorted() {
        let v = serde_json::json!({"b": 1, "a": {"z": [ {"y": 0, "x": 1} ], "c": null}});
        let s = serde_json::to_string(&canonical(v)).unwrap();
        assert_eq!(s, r#"{"a":{"c":null,"z":[{"x":1,"y":0}]},"b":1}"#);
    }
}
