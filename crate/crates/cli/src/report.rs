use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// Everything a command produced, in the order it is rendered.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Inputs,
    pub results: Value,
    /// Window and budget parameters every bounded result depends on.
    pub bounds: BTreeMap<String, Value>,
    pub provenance: Vec<String>,
    pub warnings: Vec<String>,
    pub errors: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<u32>,
    /// SHA-256 over the canonical algebra spec and resolved module files.
    pub digest: String,
    pub seed: u64,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(a) = &self.inputs.algebra {
            let _ = writeln!(out, "algebra: {a} over GF({})", self.inputs.field.unwrap_or(0));
        }
        if !self.inputs.digest.is_empty() {
            let _ = writeln!(out, "digest: {}", self.inputs.digest);
        }
        let _ = writeln!(out, "seed: {}", self.inputs.seed);
        if !self.bounds.is_empty() {
            out.push_str("bounds:\n");
            for (k, v) in &self.bounds {
                let _ = writeln!(out, "  {k}: {}", scalar(v));
            }
        }
        if !self.results.is_null() {
            out.push_str("results:\n");
            render(&self.results, 1, &mut out);
        }
        list(&mut out, "provenance", &self.provenance);
        list(&mut out, "warnings", &self.warnings);
        list(&mut out, "errors", &self.errors);
        if let Some(t) = &self.timings_ms {
            out.push_str("timings_ms:\n");
            for (k, v) in t {
                let _ = writeln!(out, "  {k}: {v}");
            }
        }
        out
    }
}

fn list(out: &mut String, name: &str, items: &[String]) {
    if items.is_empty() {
        return;
    }
    let _ = writeln!(out, "{name}:");
    for s in items {
        let _ = writeln!(out, "  - {s}");
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs
            .iter()
            .all(|x| !x.is_object() && !x.is_array() || is_numeric_array(x)),
        Value::Object(_) => false,
        _ => true,
    }
}

fn is_numeric_array(v: &Value) -> bool {
    matches!(v, Value::Array(xs) if xs.iter().all(Value::is_number))
}

/// Indented key/value rendering; arrays of scalars stay on one line so
/// dimension vectors read as `[1, 0, 2]`.
fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_flat(x) {
                    let _ = writeln!(out, "{pad}{k}: {}", inline(x));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    render(x, depth + 1, out);
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if is_flat(x) {
                    let _ = writeln!(out, "{pad}- {}", inline(x));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    render(x, depth + 1, out);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", inline(other));
        }
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(xs) => format!("[{}]", xs.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => scalar(other),
    }
}
