//! The report envelope shared by every command, and its plain-text rendering.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const TOOL: &str = "gradus";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    /// A verification ran and failed.
    Failed,
    /// The input was rejected.
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub fields: Vec<String>,
    /// Wall-clock time. The only field that differs between reruns.
    pub timing_ms: u64,
    pub status: Status,
    pub result: Value,
}

impl Report {
    pub fn new(
        command: &str,
        seed: u64,
        fields: Vec<String>,
        status: Status,
        result: Value,
    ) -> Self {
        Report {
            tool: TOOL.into(),
            version: VERSION.into(),
            command: command.into(),
            seed,
            fields,
            timing_ms: 0,
            status,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `key: value` lines for every leaf of the JSON form, so the text and JSON outputs carry
    /// the same information.
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        render(&value, "", &mut out);
        out
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn render(v: &Value, path: &str, out: &mut String) {
    let line = |out: &mut String, text: &str| {
        out.push_str(if path.is_empty() { "value" } else { path });
        out.push_str(": ");
        out.push_str(text);
        out.push('\n');
    };
    match v {
        Value::Object(map) => {
            if map.is_empty() {
                line(out, "{}");
            }
            for (k, child) in map {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                render(child, &p, out);
            }
        }
        Value::Array(items) => {
            // Flat arrays of scalars stay on one line.
            let flat: Option<Vec<String>> = items.iter().map(scalar_text).collect();
            match flat {
                Some(parts) if !parts.is_empty() => line(out, &parts.join(" ")),
                _ if items.is_empty() => line(out, "[]"),
                _ => {
                    for (i, child) in items.iter().enumerate() {
                        render(child, &format!("{path}[{i}]"), out);
                    }
                }
            }
        }
        leaf => line(out, &scalar_text(leaf).expect("leaf")),
    }
}
