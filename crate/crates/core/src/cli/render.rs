//! Plain-text rendering of a JSON report.

use std::fmt::Write;

use serde_json::Value;

pub fn human(report: &Value) -> String {
    let mut out = String::new();
    if let Some(results) = report.get("results") {
        value(&mut out, results, 0);
    }
    out
}

fn is_matrix(v: &Value) -> bool {
    match v.as_array() {
        Some(rows) if !rows.is_empty() => rows
            .iter()
            .all(|r| r.as_array().is_some_and(|r| !r.is_empty() && r.iter().all(Value::is_number))),
        _ => false,
    }
}

fn number(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else if (1e-4..1e6).contains(&x.abs()) {
        let s = format!("{x:.6}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{x:.4e}")
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Number(n) => number(n.as_f64().unwrap_or(f64::NAN)),
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) if !a.is_empty() && a.iter().all(|r| r.as_array().is_some_and(Vec::is_empty)) => {
            format!("({}x0)", a.len())
        }
        Value::Array(a) => {
            let parts: Vec<String> = a.iter().map(scalar).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn is_inline(v: &Value) -> bool {
    match v {
        Value::Array(a) => {
            a.iter().all(|x| !x.is_object() && !x.is_array()) || a.iter().all(|r| r.as_array().is_some_and(Vec::is_empty))
        }
        Value::Object(_) => false,
        _ => true,
    }
}

fn matrix(out: &mut String, v: &Value, indent: usize) {
    let nums: Vec<Vec<f64>> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|x| x.as_f64().unwrap_or(f64::NAN)).collect())
        .collect();
    let big = nums.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    let rows: Vec<Vec<String>> = nums
        .iter()
        .map(|r| r.iter().map(|&x| number(if x.abs() <= 1e-12 * big { 0.0 } else { x })).collect())
        .collect();
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    for r in rows {
        let cells: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "{:indent$}[ {} ]", "", cells.join("  "));
    }
}

fn value(out: &mut String, v: &Value, indent: usize) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_matrix(x) {
                    let _ = writeln!(out, "{:indent$}{k}:", "");
                    matrix(out, x, indent + 2);
                } else if is_inline(x) {
                    let _ = writeln!(out, "{:indent$}{k}: {}", "", scalar(x));
                } else {
                    let _ = writeln!(out, "{:indent$}{k}:", "");
                    value(out, x, indent + 2);
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                if is_inline(x) {
                    let _ = writeln!(out, "{:indent$}- {}", "", scalar(x));
                } else {
                    let _ = writeln!(out, "{:indent$}- [{}]", "", i + 1);
                    value(out, x, indent + 2);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{:indent$}{}", "", scalar(other));
        }
    }
}
