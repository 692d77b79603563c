//! JSON/CSV assembly: sorted-key JSON with a schema tag and
//! deterministic 17-significant-digit CSV cells.

use serde::Serialize;
use serde_json::Value;

use crate::config::SCHEMA;

/// Serialize with sorted keys (serde_json's Value object is ordered) and a
/// top-level schema tag.
pub fn to_schema_json<T: Serialize>(payload: &T) -> String {
    let mut v = serde_json::to_value(payload).expect("serializable report");
    if let Value::Object(map) = &mut v {
        map.insert("schema".to_string(), Value::String(SCHEMA.to_string()));
    }
    let mut s = serde_json::to_string_pretty(&v).expect("valid JSON value");
    s.push('\n');
    s
}

/// Fixed-width scientific formatting, round-trip exact for f64.
pub fn num(x: f64) -> String {
    format!("{x:.17e}")
}

pub struct CsvWriter {
    buf: String,
}

impl CsvWriter {
    pub fn new(header: &[&str]) -> Self {
        let mut buf = String::new();
        buf.push_str(&header.join(","));
        buf.push('\n');
        CsvWriter { buf }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.buf.push_str(&cells.join(","));
        self.buf.push('\n');
    }

    pub fn finish(self) -> String {
        self.buf
    }
}
