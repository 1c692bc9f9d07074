//! Report formatting: pretty JSON, and flat `field value` views for table and CSV.

use serde::Serialize;
use serde_json::Value;
use sfink::chain::pair_labels;
use sfink::{ChainRow, CHAIN_LABELS};

use crate::args::Format;
use crate::error::Result;

/// Leaf values of `v` keyed by dotted path; array elements are keyed by index.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let join = |k: &str| {
            if prefix.is_empty() {
                k.to_string()
            } else {
                format!("{prefix}.{k}")
            }
        };
        match v {
            Value::Object(m) => m.iter().for_each(|(k, v)| walk(&join(k), v, out)),
            Value::Array(a) if a.is_empty() => out.push((prefix.to_string(), String::new())),
            Value::Array(a) => a
                .iter()
                .enumerate()
                .for_each(|(i, v)| walk(&join(&i.to_string()), v, out)),
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            Value::Null => out.push((prefix.to_string(), String::new())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    walk("", v, &mut out);
    out
}

fn table(fields: &[(String, String)]) -> String {
    let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    fields
        .iter()
        .map(|(k, v)| format!("{k:width$}  {v}\n"))
        .collect()
}

fn field_csv(fields: &[(String, String)]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["field", "value"])?;
    for (k, v) in fields {
        w.write_record([k, v])?;
    }
    Ok(String::from_utf8_lossy(&w.into_inner().map_err(|e| e.into_error())?).into_owned())
}

pub fn render<T: Serialize>(report: &T, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Table => Ok(table(&flatten(&serde_json::to_value(report)?))),
        Format::Csv => field_csv(&flatten(&serde_json::to_value(report)?)),
    }
}

/// `x`, one column per chain member, then one per consecutive gap.
pub fn chain_csv(rows: &[ChainRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["x".to_string()];
    header.extend(CHAIN_LABELS.iter().map(|s| s.to_string()));
    header.extend(pair_labels().into_iter().map(|p| format!("gap:{p}")));
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![r.x.to_string()];
        rec.extend(r.values.iter().map(f64::to_string));
        rec.extend(r.gaps.iter().map(f64::to_string));
        w.write_record(&rec)?;
    }
    Ok(String::from_utf8_lossy(&w.into_inner().map_err(|e| e.into_error())?).into_owned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flatten_paths() {
        let v = json!({"a": 1.5, "b": {"c": [true, null]}, "d": []});
        let f = flatten(&v);
        assert_eq!(
            f,
            vec![
                ("a".into(), "1.5".into()),
                ("b.c.0".into(), "true".into()),
                ("b.c.1".into(), "".into()),
                ("d".into(), "".into()),
            ]
        );
    }

    #[test]
    fn csv_has_header() {
        let s = render(&json!({"k": "v,w"}), Format::Csv).unwrap();
        assert_eq!(s, "field,value\nk,\"v,w\"\n");
    }
}
