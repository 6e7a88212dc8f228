use serde_json::Value;

/// Human-readable report: the verdict first, then one line per key.
pub fn render_text(body: &Value) -> String {
    let mut out = String::new();
    let Value::Object(map) = body else {
        return format!("{body}\n");
    };
    if let Some(v) = map.get("verdict").and_then(Value::as_str) {
        out.push_str(&format!("verdict: {v}\n"));
    }
    for (k, v) in map {
        if k == "verdict" {
            continue;
        }
        match v {
            Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
            Value::Array(items) if k == "checks" => {
                out.push_str("checks:\n");
                for c in items {
                    out.push_str(&format!("  {}\n", compact(c)));
                }
            }
            _ => out.push_str(&format!("{k}: {}\n", compact(v))),
        }
    }
    out
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).unwrap_or_default()
}
