//! Human-readable rendering of a report document: scalar fields as aligned
//! `key value` lines, arrays of objects as tables.

use serde_json::{Map, Value};

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.is_empty() => "-".into(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(","),
        Value::Object(_) => {
            let mut cells = Vec::new();
            flatten_row("", v, &mut cells);
            cells.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

fn flatten_row(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten_row(&key, v, out);
            }
        }
        other => out.push((prefix.to_owned(), scalar(other))),
    }
}

fn walk(prefix: &str, v: &Value, lines: &mut Vec<(String, String)>, tables: &mut Vec<(String, Vec<Map<String, Value>>)>) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                walk(&key, v, lines, tables);
            }
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
            let rows = items.iter().filter_map(|i| i.as_object().cloned()).collect();
            tables.push((prefix.to_owned(), rows));
        }
        other => lines.push((prefix.to_owned(), scalar(other))),
    }
}

fn table(title: &str, rows: &[Map<String, Value>]) -> String {
    let flat: Vec<Vec<(String, String)>> = rows
        .iter()
        .map(|r| {
            let mut cells = Vec::new();
            flatten_row("", &Value::Object(r.clone()), &mut cells);
            cells
        })
        .collect();
    let mut columns: Vec<String> = Vec::new();
    for row in &flat {
        for (k, _) in row {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
    }
    let cell = |row: &[(String, String)], col: &str| -> String {
        row.iter().find(|(k, _)| k == col).map(|(_, v)| v.clone()).unwrap_or_else(|| "-".into())
    };
    let widths: Vec<usize> = columns
        .iter()
        .map(|c| flat.iter().map(|r| cell(r, c).len()).max().unwrap_or(0).max(c.len()))
        .collect();
    let line = |cells: Vec<String>| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_owned()
    };
    let mut out = format!("{title} ({} rows)\n", rows.len());
    out += &format!("  {}\n", line(columns.clone()));
    for row in &flat {
        out += &format!("  {}\n", line(columns.iter().map(|c| cell(row, c)).collect()));
    }
    out
}

pub fn human(doc: &Value) -> String {
    let mut lines = Vec::new();
    let mut tables = Vec::new();
    walk("", doc, &mut lines, &mut tables);
    let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out: String = lines.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect();
    for (title, rows) in &tables {
        out.push('\n');
        out += &table(title, rows);
    }
    out
}
