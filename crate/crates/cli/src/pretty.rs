use serde_json::Value;

/// Two-column table of the top-level fields; nested values stay compact
/// JSON, and arrays of objects get one row each.
pub fn render(v: &Value) -> String {
    let Value::Object(map) = v else {
        return v.to_string();
    };
    let width = map.keys().map(String::len).max().unwrap_or(0);
    let mut lines = Vec::new();
    for (key, val) in map {
        match val {
            Value::Array(items) if items.iter().any(Value::is_object) => {
                lines.push(format!("{key:<width$}  ({} entries)", items.len()));
                lines.extend(items.iter().map(|it| format!("{:<width$}  {it}", "")));
            }
            Value::String(s) => lines.push(format!("{key:<width$}  {s}")),
            other => lines.push(format!("{key:<width$}  {other}")),
        }
    }
    lines.join("\n")
}
