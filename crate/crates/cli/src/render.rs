use serde_json::{Map, Value};

use crate::Format;

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            text(v, 0, &mut out);
            out
        }
        Format::Csv => csv_table(v),
    }
}

/// Integral floats become JSON integers, so `7.0` prints as `7`.
pub fn compact_float(x: f64) -> Value {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        Value::from(x as i64)
    } else {
        Value::from(x)
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(a.iter().filter_map(scalar).collect::<Vec<_>>().join(", "))
        }
        _ => None,
    }
}

fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        text(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

fn csv_table(v: &Value) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let rows = v.as_object().and_then(|m| m.values().find_map(|x| x.as_array().filter(|a| a.iter().all(Value::is_object))));
    match rows {
        Some(rows) if !rows.is_empty() => {
            let mut header: Vec<String> = Vec::new();
            for r in rows {
                for k in r.as_object().unwrap().keys() {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
            w.write_record(&header).expect("in-memory write");
            for r in rows {
                let m: &Map<String, Value> = r.as_object().unwrap();
                let record: Vec<String> =
                    header.iter().map(|k| m.get(k).map(cell).unwrap_or_default()).collect();
                w.write_record(&record).expect("in-memory write");
            }
        }
        _ => {
            w.write_record(["key", "value"]).expect("in-memory write");
            if let Some(m) = v.as_object() {
                for (k, x) in m {
                    w.write_record([k.as_str(), &cell(x)]).expect("in-memory write");
                }
            }
        }
    }
    String::from_utf8(w.into_inner().expect("flushed")).expect("utf-8")
}

fn cell(v: &Value) -> String {
    scalar(v).unwrap_or_else(|| v.to_string())
}
