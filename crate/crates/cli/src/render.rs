//! Text rendering of JSON reports: one `key: value` line per top-level
//! field, nested values inlined as compact JSON.

use serde_json::Value;

pub fn text(report: &Value) -> String {
    match report {
        Value::Object(map) => {
            let mut out = String::new();
            for (key, value) in map {
                out.push_str(key);
                out.push_str(": ");
                out.push_str(&scalar(value));
                out.push('\n');
            }
            out
        }
        other => format!("{}\n", scalar(other)),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}
