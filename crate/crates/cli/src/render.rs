//! Rendering of result rows as aligned text, CSV or JSON.
//!
//! Every row type is a flat serde struct; its field order is the column
//! order in all three encodings.

use std::io::Write;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

fn text_cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn text_table<R: Serialize>(rows: &[R]) -> Result<String, String> {
    let values: Vec<Value> = rows
        .iter()
        .map(serde_json::to_value)
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let Some(Value::Object(first)) = values.first() else {
        return Ok(String::new());
    };
    let header: Vec<String> = first.keys().cloned().collect();
    let cells: Vec<Vec<String>> = values
        .iter()
        .map(|v| match v {
            Value::Object(m) => m.values().map(text_cell).collect(),
            other => vec![text_cell(other)],
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            cells
                .iter()
                .map(|r| r[c].chars().count())
                .chain([header[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |items: &[String]| {
        let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&header);
    for r in &cells {
        out += &line(r);
    }
    Ok(out)
}

fn csv_table<R: Serialize>(rows: &[R]) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

/// JSON text for `value`, pretty-printed with a trailing newline. Parsing
/// the output and rendering it again gives the same bytes.
pub fn json_text<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| e.to_string())
}

/// Render rows; with `single` the JSON form is one object instead of an
/// array.
pub fn render<R: Serialize>(rows: &[R], format: Format, single: bool) -> Result<String, String> {
    match format {
        Format::Text => text_table(rows),
        Format::Csv => csv_table(rows),
        Format::Json if single && rows.len() == 1 => json_text(&rows[0]),
        Format::Json => json_text(&rows),
    }
}

pub fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    // A closed pipe is not worth a panic.
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}
