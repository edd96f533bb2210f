//! Text rendering: one `dotted.key = value` line per leaf of the JSON document.

use serde_json::Value;

pub fn flatten(value: &Value) -> String {
    let mut out = String::new();
    walk(value, String::new(), &mut out);
    out
}

fn walk(value: &Value, path: String, out: &mut String) {
    let child = |key: &str| {
        if path.is_empty() {
            key.to_string()
        } else {
            format!("{path}.{key}")
        }
    };
    match value {
        Value::Object(map) if !map.is_empty() => {
            for (k, v) in map {
                walk(v, child(k), out);
            }
        }
        Value::Array(items) if !items.is_empty() => {
            for (i, v) in items.iter().enumerate() {
                walk(v, child(&i.to_string()), out);
            }
        }
        Value::Object(_) => line(out, &path, "{}"),
        Value::Array(_) => line(out, &path, "[]"),
        Value::String(s) => line(out, &path, s),
        other => line(out, &path, &other.to_string()),
    }
}

fn line(out: &mut String, path: &str, value: &str) {
    out.push_str(path);
    out.push_str(" = ");
    out.push_str(value);
    out.push('\n');
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_paths() {
        let v = json!({"a": {"b": [1, "x"], "c": null}, "d": [], "e": {}});
        assert_eq!(flatten(&v), "a.b.0 = 1\na.b.1 = x\na.c = null\nd = []\ne = {}\n");
    }
}
