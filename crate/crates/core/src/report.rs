//! Deterministic JSON rendering for reports.
//!
//! Object keys are sorted, floats carry 17 significant digits (`1.0000000000000000e-1`),
//! integers stay integers, and non-finite floats become the strings `"inf"`,
//! `"-inf"` or `"nan"`.

use serde::Serializer;
use serde_json::{json, Map, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `serialize_with` helper for fields that may hold an infinity marker.
pub fn extended_float<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    match float_marker(*x) {
        Some(marker) => s.serialize_str(marker),
        None => s.serialize_f64(*x),
    }
}

pub fn extended_float_pairs<S: Serializer>(pairs: &[(f64, f64)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(pairs.len()))?;
    for &(a, b) in pairs {
        seq.serialize_element(&[float(a), float(b)])?;
    }
    seq.end()
}

fn float_marker(x: f64) -> Option<&'static str> {
    if x.is_nan() {
        Some("nan")
    } else if x == f64::INFINITY {
        Some("inf")
    } else if x == f64::NEG_INFINITY {
        Some("-inf")
    } else {
        None
    }
}

pub fn float(x: f64) -> Value {
    match float_marker(x) {
        Some(marker) => Value::String(marker.into()),
        None => json!(x),
    }
}

/// Reads a number or one of the markers back.
pub fn parse_float(v: &Value) -> Option<f64> {
    match v {
        Value::Number(n) => n.as_f64(),
        Value::String(s) => match s.as_str() {
            "inf" => Some(f64::INFINITY),
            "-inf" => Some(f64::NEG_INFINITY),
            "nan" => Some(f64::NAN),
            _ => None,
        },
        _ => None,
    }
}

fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Null | Value::Bool(_) | Value::String(_) => out.push_str(&v.to_string()),
        Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&format_float(n.as_f64().expect("f64 number")));
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(item, indent + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (k, key) in keys.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String((*key).clone()).to_string());
                out.push_str(": ");
                write_value(&map[*key], indent + 1, out);
                out.push_str(if k + 1 < keys.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
    }
}

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

/// Wraps a result with the tool version, command and resolved configuration.
pub fn envelope(command: &str, config: Value, result: Value) -> Value {
    let mut map = Map::new();
    map.insert("tool".into(), json!("geolie"));
    map.insert("version".into(), json!(VERSION));
    map.insert("command".into(), json!(command));
    map.insert("config".into(), config);
    map.insert("result".into(), result);
    Value::Object(map)
}

pub fn error_value(kind: &str, message: &str) -> Value {
    json!({ "error": { "kind": kind, "message": message } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_and_markers() {
        let v = json!({"b": 0.1, "a": [1, float(f64::INFINITY)], "c": {}});
        let text = render(&v);
        assert_eq!(
            text,
            "{\n  \"a\": [\n    1,\n    \"inf\"\n  ],\n  \"b\": 1.0000000000000001e-1,\n  \"c\": {}\n}\n"
        );
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back["b"].as_f64(), Some(0.1));
        assert_eq!(parse_float(&back["a"][1]), Some(f64::INFINITY));
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [1.0 / 3.0, 2e-300, 123456.789, -0.5] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let mantissa = s.split('e').next().unwrap().replace(['-', '.'], "");
            assert_eq!(mantissa.len(), 17);
        }
    }
}
