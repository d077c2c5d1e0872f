use serde_json::{json, Map, Value};
use vermalab_core::report::{ReportItem, Status, VerificationReport};

use crate::commands::{CliError, Outcome};

fn item_json(i: &ReportItem) -> Value {
    let mut m = Map::new();
    m.insert("label".into(), json!(i.label));
    m.insert("anchor".into(), json!(i.anchor));
    m.insert("status".into(), json!(i.status.as_str()));
    if let Some(w) = &i.witness {
        m.insert("witness".into(), json!(w));
    }
    Value::Object(m)
}

fn report_json(r: &VerificationReport) -> Value {
    json!({"suite": r.suite, "items": r.items.iter().map(item_json).collect::<Vec<_>>()})
}

/// The canonical JSON document; keys come out sorted.
pub fn document(o: &Outcome) -> Value {
    let count = |s: Status| o.reports.iter().map(|r| r.count(s)).sum::<usize>();
    let mut doc = Map::new();
    doc.insert("command".into(), json!(o.command));
    doc.insert("config".into(), Value::Object(o.config.clone()));
    doc.insert("reports".into(), Value::Array(o.reports.iter().map(report_json).collect()));
    doc.insert(
        "summary".into(),
        json!({
            "pass": count(Status::Pass),
            "fail": count(Status::Fail),
            "vacuous": count(Status::Vacuous),
            "finding": count(Status::Finding),
        }),
    );
    if let Some((data, _)) = &o.data {
        doc.insert("data".into(), data.clone());
    }
    Value::Object(doc)
}

pub fn to_json(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON values serialize");
    s.push('\n');
    s
}

/// The data table if the command has one, else one row per report item.
pub fn to_csv(o: &Outcome) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Internal(e.to_string());
    match &o.data {
        Some((_, table)) => {
            w.write_record(&table.header).map_err(io)?;
            for row in &table.rows {
                w.write_record(row).map_err(io)?;
            }
        }
        None => {
            w.write_record(["suite", "label", "anchor", "status", "witness"]).map_err(io)?;
            for r in &o.reports {
                for i in &r.items {
                    w.write_record([
                        r.suite.as_str(),
                        &i.label,
                        &i.anchor,
                        i.status.as_str(),
                        i.witness.as_deref().unwrap_or(""),
                    ])
                    .map_err(io)?;
                }
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}
