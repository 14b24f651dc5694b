//! Machine-readable reports.
//!
//! Reports are ordered trees rendered either as a single JSON document or
//! as a flat human-readable table. Rendering is fully deterministic: field
//! order is insertion order and every float is printed with 17 significant
//! digits, enough to round-trip f64 losslessly.

/// A report node.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    List(Vec<Value>),
    Object(Vec<(String, Value)>),
}

impl Value {
    pub fn float(v: f64) -> Value {
        Value::Float(v)
    }

    pub fn int(v: usize) -> Value {
        Value::Int(v as i64)
    }

    pub fn str(v: impl Into<String>) -> Value {
        Value::Str(v.into())
    }

    pub fn object(fields: Vec<(&str, Value)>) -> Value {
        Value::Object(
            fields
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        )
    }
}

/// One structured document emitted per CLI invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    root: Value,
}

impl Report {
    pub fn new(fields: Vec<(&str, Value)>) -> Report {
        Report {
            root: Value::object(fields),
        }
    }

    pub fn root(&self) -> &Value {
        &self.root
    }

    pub fn render(&self, pretty: bool) -> String {
        if pretty {
            self.to_table()
        } else {
            self.to_json()
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        write_json(&self.root, &mut out);
        out
    }

    /// Flat `key = value` table with dotted paths, for human consumption.
    pub fn to_table(&self) -> String {
        let mut rows: Vec<(String, String)> = Vec::new();
        flatten("", &self.root, &mut rows);
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        out.pop();
        out
    }
}

/// 17 significant digits: lossless decimal image of an f64.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_json(value: &Value, out: &mut String) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Int(i) => out.push_str(&i.to_string()),
        Value::Float(v) => out.push_str(&format_float(*v)),
        Value::Str(s) => write_json_string(s, out),
        Value::List(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_json(item, out);
            }
            out.push(']');
        }
        Value::Object(fields) => {
            out.push('{');
            for (i, (key, item)) in fields.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_json_string(key, out);
                out.push(':');
                write_json(item, out);
            }
            out.push('}');
        }
    }
}

fn write_json_string(s: &str, out: &mut String) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
}

fn scalar_text(value: &Value) -> Option<String> {
    match value {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Int(i) => Some(i.to_string()),
        Value::Float(v) => Some(format!("{v}")),
        Value::Str(s) => Some(s.clone()),
        _ => None,
    }
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    match value {
        Value::Object(fields) => {
            for (key, item) in fields {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                flatten(&path, item, rows);
            }
        }
        Value::List(items) => {
            let text = items
                .iter()
                .map(|i| scalar_text(i).unwrap_or_else(|| "...".into()))
                .collect::<Vec<_>>()
                .join(", ");
            rows.push((prefix.to_string(), format!("[{text}]")));
        }
        scalar => rows.push((
            prefix.to_string(),
            scalar_text(scalar).expect("non-container"),
        )),
    }
}
