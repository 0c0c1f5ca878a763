//! Report documents: schema header, verdict lattice, provenance tagging.

use std::fmt;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "unrx-report/1";

/// Ordered by precedence when combining: certified < unknown < refuted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Certified,
    Unknown,
    Refuted,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Certified => 0,
            Verdict::Refuted => 1,
            Verdict::Unknown => 2,
        }
    }

    pub fn combine(it: impl IntoIterator<Item = Verdict>) -> Verdict {
        it.into_iter().max().unwrap_or(Verdict::Certified)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Certified => "certified",
            Verdict::Unknown => "unknown",
            Verdict::Refuted => "refuted",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    PaperTarget,
}

impl Provenance {
    fn tag(self) -> &'static str {
        match self {
            Provenance::Computed => "computed",
            Provenance::PaperTarget => "paper-regression-target",
        }
    }
}

fn is_numeric_str(s: &str) -> bool {
    let s = s.strip_prefix('-').unwrap_or(s);
    let mut parts = s.splitn(2, '/');
    let digits = |p: &str| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit());
    match (parts.next(), parts.next()) {
        (Some(a), None) => digits(a),
        (Some(a), Some(b)) => digits(a) && digits(b),
        _ => false,
    }
}

fn is_tagged(m: &Map<String, Value>) -> bool {
    m.len() == 2 && m.contains_key("value") && m.get("provenance").is_some_and(Value::is_string)
}

/// Wraps every numeric leaf (JSON numbers and decimal or fraction strings)
/// as `{"value": .., "provenance": ..}`; already wrapped leaves are kept.
pub fn tag(v: Value, p: Provenance) -> Value {
    match v {
        Value::Number(_) => json!({ "value": v, "provenance": p.tag() }),
        Value::String(ref s) if is_numeric_str(s) => json!({ "value": v, "provenance": p.tag() }),
        Value::Array(xs) => Value::Array(xs.into_iter().map(|x| tag(x, p)).collect()),
        Value::Object(m) if is_tagged(&m) => Value::Object(m),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, x)| (k, tag(x, p))).collect()),
        other => other,
    }
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

pub struct Document {
    pub command: String,
    pub argv: String,
    pub verdict: Verdict,
    pub result: Value,
}

impl Document {
    pub fn render(&self) -> String {
        let body = json!({
            "verdict": self.verdict,
            "exit_code": self.verdict.exit_code(),
            "result": self.result,
        });
        let mut doc = match tag(body, Provenance::Computed) {
            Value::Object(m) => m,
            _ => unreachable!("object in, object out"),
        };
        doc.insert("schema".into(), json!(SCHEMA));
        doc.insert("tool".into(), json!({ "name": "unrx", "version": env!("CARGO_PKG_VERSION") }));
        doc.insert("config".into(), json!({ "command": self.command, "argv": self.argv }));
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("json");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.render())
    }
}
