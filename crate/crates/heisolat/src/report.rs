//! Deterministic rendering of reports.  Reports are built as JSON values
//! with sorted keys; the text format flattens the same structure to one
//! `key: value` line per leaf so that golden files stay reviewable.

use serde_json::Value;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Text,
    Json,
}

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            flatten("", value, &mut out);
            out
        }
    }
}

fn leaf(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    if let Some(s) = leaf(v) {
        if prefix.is_empty() {
            out.push_str(&s);
        } else {
            out.push_str(prefix);
            out.push_str(": ");
            out.push_str(&s);
        }
        out.push('\n');
        return;
    }
    match v {
        Value::Object(m) => {
            for (k, val) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, val, out);
            }
        }
        Value::Array(a) => {
            for (i, val) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), val, out);
            }
        }
        _ => unreachable!("leaves handled above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_flattening_is_one_line_per_leaf() {
        let v = json!({
            "b": {"x": 1, "y": "two"},
            "a": [true, null],
        });
        // serde_json maps are ordered, so "a" comes first
        assert_eq!(
            render(&v, Format::Text),
            "a[0]: true\na[1]: null\nb.x: 1\nb.y: two\n"
        );
        let j = render(&v, Format::Json);
        assert!(j.starts_with('{') && j.ends_with('\n'));
    }
}
