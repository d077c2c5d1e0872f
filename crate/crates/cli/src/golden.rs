use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::commands::CliError;

/// What a golden comparison found.
#[derive(Debug, PartialEq, Eq)]
pub enum GoldenOutcome {
    Match,
    Blessed(PathBuf),
    /// One line per differing item or field.
    Mismatch(Vec<String>),
}

/// Config fields that select a golden file, with their short tags.
const KEY_FIELDS: [(&str, &str); 8] = [
    ("n", "n"),
    ("degree", "d"),
    ("max_degree", "dmax"),
    ("mode", ""),
    ("generators", ""),
    ("global", ""),
    ("integral", ""),
    ("spec", "at"),
];

/// File name derived from the command and its defining options.
pub fn key(doc: &Value) -> String {
    let mut parts = vec![doc["command"].as_str().unwrap_or("run").to_string()];
    for (f, tag) in KEY_FIELDS {
        let v = &doc["config"][f];
        let s = match v {
            Value::Null | Value::Bool(false) => continue,
            Value::Bool(true) => f.to_string(),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let s: String = s
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
            .collect();
        parts.push(format!("{tag}{s}"));
    }
    parts.join("_") + ".json"
}

pub fn path(dir: &Path, doc: &Value) -> PathBuf {
    dir.join(key(doc))
}

/// Compares `rendered` byte for byte with the stored golden, or writes it.
pub fn compare_or_bless(dir: &Path, doc: &Value, rendered: &str, bless: bool) -> Result<GoldenOutcome, CliError> {
    let file = path(dir, doc);
    if bless {
        fs::create_dir_all(dir).map_err(|e| CliError::Internal(format!("{}: {e}", dir.display())))?;
        fs::write(&file, rendered).map_err(|e| CliError::Internal(format!("{}: {e}", file.display())))?;
        return Ok(GoldenOutcome::Blessed(file));
    }
    let stored = match fs::read_to_string(&file) {
        Ok(s) => s,
        Err(_) => return Err(CliError::Usage(format!("missing golden {}; rerun with --bless", file.display()))),
    };
    if stored == rendered {
        return Ok(GoldenOutcome::Match);
    }
    let mut diffs = match serde_json::from_str::<Value>(&stored) {
        Ok(expected) => diff(&expected, doc),
        Err(e) => vec![format!("golden is not JSON: {e}")],
    };
    if diffs.is_empty() {
        diffs.push("serialization differs".into());
    }
    Ok(GoldenOutcome::Mismatch(diffs))
}

fn reports(doc: &Value) -> Vec<(&str, &[Value])> {
    doc["reports"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|r| (r["suite"].as_str().unwrap_or_default(), r["items"].as_array().map_or(&[][..], Vec::as_slice)))
        .collect()
}

fn describe(i: &Value) -> String {
    format!("status {}, witness {}", i["status"], i["witness"])
}

/// Differences between two documents. Items are paired by position within
/// each suite, since a label may carry counts that change with the outcome;
/// a changed item is named by its golden label.
pub fn diff(expected: &Value, actual: &Value) -> Vec<String> {
    let mut out = Vec::new();
    for field in ["command", "config", "summary"] {
        if expected[field] != actual[field] {
            out.push(format!("{field}: expected {}, got {}", expected[field], actual[field]));
        }
    }
    let (ra, rb) = (reports(expected), reports(actual));
    for k in 0..ra.len().max(rb.len()) {
        let (suite, a, b) = match (ra.get(k), rb.get(k)) {
            (Some((s, a)), Some((t, b))) if s == t => (*s, *a, *b),
            (Some((s, _)), Some((t, _))) => {
                out.push(format!("report {k}: suite {s} became {t}"));
                continue;
            }
            (Some((s, _)), None) => {
                out.push(format!("report {s} missing"));
                continue;
            }
            (None, Some((t, _))) => {
                out.push(format!("report {t} unexpected"));
                continue;
            }
            (None, None) => unreachable!(),
        };
        for j in 0..a.len().max(b.len()) {
            match (a.get(j), b.get(j)) {
                (Some(e), Some(g)) if e != g => {
                    let renamed = if e["label"] != g["label"] { format!(", now labelled {}", g["label"]) } else { String::new() };
                    out.push(format!(
                        "item {suite}: {} changed: {} -> {}{renamed}",
                        e["label"].as_str().unwrap_or_default(),
                        describe(e),
                        describe(g)
                    ));
                }
                (Some(e), None) => out.push(format!("item {suite}: {} missing", e["label"].as_str().unwrap_or_default())),
                (None, Some(g)) => out.push(format!("item {suite}: {} unexpected", g["label"].as_str().unwrap_or_default())),
                _ => {}
            }
        }
    }
    let mut data = Vec::new();
    value_diff(&expected["data"], &actual["data"], "data", &mut data);
    out.extend(data.into_iter().take(10));
    out
}

fn value_diff(e: &Value, a: &Value, at: &str, out: &mut Vec<String>) {
    match (e, a) {
        (Value::Object(x), Value::Object(y)) => {
            for k in x.keys().chain(y.keys().filter(|k| !x.contains_key(*k))) {
                value_diff(&x.get(k).cloned().unwrap_or(Value::Null), &y.get(k).cloned().unwrap_or(Value::Null), &format!("{at}.{k}"), out);
            }
        }
        (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
            for (i, (p, q)) in x.iter().zip(y).enumerate() {
                value_diff(p, q, &format!("{at}[{i}]"), out);
            }
        }
        _ if e != a => out.push(format!("{at}: expected {e}, got {a}")),
        _ => {}
    }
}
