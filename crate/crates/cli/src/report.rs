//! Report envelope and the JSON encodings of library values.

use std::fmt::Write as _;
use std::time::Duration;

use serde_json::{json, Map, Value};
use tpalg::format::render_vector;
use tpalg::{format_scalar, CheckReport, LieAlgebra, LinearMap, Product, Vector};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub struct Report {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub result: Map<String, Value>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Self { command, inputs: Map::new(), result: Map::new() }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.into(), value.into());
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.result.insert(key.into(), value.into());
    }

    pub fn to_value(&self, elapsed: Duration) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "timing_ms": elapsed.as_millis() as u64,
            "version": VERSION,
        })
    }
}

/// `{label: "p/q", …}` over the nonzero coordinates, in basis order.
pub fn vector_json(alg: &LieAlgebra, v: &Vector) -> Value {
    Value::Object(v.nonzeros().map(|(k, c)| (alg.label(k).to_string(), Value::String(format_scalar(c)))).collect())
}

/// `{source label: image}` over the basis vectors with nonzero image.
pub fn map_json(alg: &LieAlgebra, m: &LinearMap) -> Value {
    let mut out = Map::new();
    for i in 0..m.dim() {
        let img = m.image(i);
        if !img.is_zero() {
            out.insert(alg.label(i).to_string(), vector_json(alg, &img));
        }
    }
    Value::Object(out)
}

/// One `"a·b = …"` line per nonzero basis product.
pub fn product_json(alg: &LieAlgebra, p: &Product) -> Value {
    Value::Array(
        p.entries()
            .map(|((i, j), v)| Value::String(format!("{}·{} = {}", alg.label(i), alg.label(j), render_vector(alg, v))))
            .collect(),
    )
}

pub fn check_json<const N: usize, K>(
    alg: &LieAlgebra,
    report: &CheckReport<K>,
    at: impl Fn(&K) -> [usize; N],
) -> Value {
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            json!({
                "at": at(&v.at).iter().map(|&i| alg.label(i)).collect::<Vec<_>>(),
                "residual": vector_json(alg, &v.residual),
            })
        })
        .collect();
    json!({ "ok": report.is_ok(), "violations": violations })
}

fn is_scalar(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.is_empty(),
        Value::Object(o) => o.is_empty(),
        _ => true,
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(_) => "[]".into(),
        Value::Object(_) => "{}".into(),
        other => other.to_string(),
    }
}

fn write_text(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, val) in o {
                if is_scalar(val) {
                    let _ = writeln!(out, "{pad}{k}: {}", scalar_text(val));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    write_text(out, val, indent + 2);
                }
            }
        }
        Value::Array(a) => {
            for item in a {
                if is_scalar(item) {
                    let _ = writeln!(out, "{pad}- {}", scalar_text(item));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    write_text(out, item, indent + 2);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar_text(other));
        }
    }
}

/// Indented `key: value` rendering of a report value.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write_text(&mut out, v, 0);
    out
}
