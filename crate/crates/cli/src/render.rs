//! Human-readable rendering of a report. Not a stable format.

use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn inline_row(items: &[Value]) -> String {
    format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", "))
}

fn is_matrix(items: &[Value]) -> bool {
    !items.is_empty() && items.iter().all(|r| matches!(r, Value::Array(xs) if xs.iter().all(is_scalar)))
}

fn field(out: &mut String, indent: usize, key: &str, v: &Value) {
    let pad = " ".repeat(indent);
    match v {
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push_str(&format!("{pad}{key}: {}\n", inline_row(items)));
        }
        Value::Array(items) if is_matrix(items) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for r in items {
                out.push_str(&format!("{pad}  {}\n", inline_row(r.as_array().expect("row"))));
            }
        }
        Value::Array(items) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for item in items {
                out.push_str(&format!("{pad}  -\n"));
                body(out, indent + 4, item);
            }
        }
        Value::Object(_) => {
            out.push_str(&format!("{pad}{key}:\n"));
            body(out, indent + 2, v);
        }
        _ => out.push_str(&format!("{pad}{key}: {}\n", scalar(v))),
    }
}

fn body(out: &mut String, indent: usize, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                field(out, indent, k, x);
            }
        }
        other => out.push_str(&format!("{}{}\n", " ".repeat(indent), scalar(other))),
    }
}

pub fn text(report: &Value) -> String {
    let mut out = format!("silting {} (seed {})\n", scalar(&report["version"]), scalar(&report["seed"]));
    if let Some(input) = report["input"].as_object() {
        out.push_str(&format!(
            "input: {} over {}, dim {}\n",
            scalar(&input["source"]),
            scalar(&input["field"]),
            scalar(&input["dim"])
        ));
    }
    for a in report["analyses"].as_array().into_iter().flatten() {
        out.push_str(&format!("\n== {} [{}]\n", scalar(&a["analysis"]), scalar(&a["status"])));
        if let Some(r) = a.get("refusal") {
            out.push_str(&format!("  refused ({}): {}\n", scalar(&r["kind"]), scalar(&r["message"])));
        }
        if let Some(r) = a.get("result") {
            body(&mut out, 2, r);
        }
    }
    if let Some(t) = report.get("timings_ms") {
        out.push('\n');
        field(&mut out, 0, "timings_ms", t);
    }
    out
}
