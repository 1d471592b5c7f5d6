//! Plain-text rendering of a JSON report.

use serde_json::Value;

/// Arrays longer than this are cut short in text output.
const MAX_ITEMS: usize = 12;

pub fn text(report: &Value) -> String {
    let mut out = String::new();
    walk(&mut out, "", report);
    out
}

fn walk(out: &mut String, path: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                walk(out, &p, child);
            }
        }
        Value::Array(items) if items.iter().all(is_inline) => {
            let shown: Vec<String> = items.iter().take(MAX_ITEMS).map(scalar).collect();
            let more = items.len().saturating_sub(MAX_ITEMS);
            let tail = if more > 0 { format!(", … {more} more") } else { String::new() };
            out.push_str(&format!("{path}: [{}{tail}]\n", shown.join(", ")));
        }
        Value::Array(items) => {
            for (i, child) in items.iter().take(MAX_ITEMS).enumerate() {
                walk(out, &format!("{path}[{i}]"), child);
            }
            if items.len() > MAX_ITEMS {
                out.push_str(&format!("{path}: … {} more\n", items.len() - MAX_ITEMS));
            }
        }
        _ => out.push_str(&format!("{path}: {}\n", scalar(v))),
    }
}

/// Scalars, and short arrays of scalars such as matrix rows.
fn is_inline(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.len() <= 4 && a.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}
