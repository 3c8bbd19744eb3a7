//! Plain-text rendering of a JSON document, one fact per line.

use serde_json::Value;

pub fn text(doc: &Value) -> String {
    let mut lines = Vec::new();
    walk(doc, "", &mut lines);
    lines.join("\n")
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items.iter().map(scalar).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(_) => None,
    }
}

fn walk(v: &Value, indent: &str, lines: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (key, value) in map {
                match scalar(value) {
                    Some(s) => lines.push(format!("{indent}{key}: {s}")),
                    None => {
                        lines.push(format!("{indent}{key}:"));
                        walk(value, &format!("{indent}  "), lines);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => lines.push(format!("{indent}- {s}")),
                    None => {
                        lines.push(format!("{indent}-"));
                        walk(item, &format!("{indent}  "), lines);
                    }
                }
            }
        }
        other => lines.push(format!("{indent}{}", scalar(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_documents() {
        let doc = json!({"a": 1, "b": {"c": [1, 2], "d": null}, "e": [{"f": true}]});
        assert_eq!(text(&doc), "a: 1\nb:\n  c: [1, 2]\n  d: none\ne:\n  -\n    f: yes");
    }
}
