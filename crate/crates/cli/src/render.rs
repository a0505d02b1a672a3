//! Plain-text rendering of JSON reports. Lossy: numbers and strings print
//! bare, nesting becomes indentation.

use serde_json::Value;

pub fn table(v: &Value) -> String {
    let mut out = String::new();
    block(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.is_empty() => Some("-".into()),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(items.iter().filter_map(scalar).collect::<Vec<_>>().join(", "))
        }
        Value::Array(items) if items.iter().all(|x| x.as_array().is_some_and(|r| r.iter().all(|y| scalar(y).is_some() && !y.is_array()))) => {
            Some(items.iter().map(|r| format!("[{}]", scalar(r).unwrap_or_default())).collect::<Vec<_>>().join(" "))
        }
        _ => None,
    }
}

/// One line per object whose fields are all scalars.
fn inline_object(v: &Value) -> Option<String> {
    let map = v.as_object()?;
    let parts: Option<Vec<String>> = map.iter().map(|(k, x)| Some(format!("{k}={}", scalar(x)?))).collect();
    parts.map(|p| p.join("  "))
}

fn block(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if let Some(s) = scalar(x) {
                    out.push_str(&format!("{pad}{k}: {s}\n"));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    block(x, depth + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match inline_object(x).or_else(|| scalar(x)) {
                    Some(line) => out.push_str(&format!("{pad}{line}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        block(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
