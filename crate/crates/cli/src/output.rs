use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::Value;

use crate::Format;

pub fn emit(format: Format, out: Option<&Path>, doc: &Value) -> Result<()> {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(doc)? + "\n",
        Format::Table => render_table(doc),
    };
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("--out: cannot write {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn compact(v: &Value) -> String {
    scalar(v).unwrap_or_else(|| v.to_string())
}

/// Rows of cells with every column padded to its widest entry.
fn grid(rows: &[Vec<String>], indent: &str) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().enumerate().map(|(c, s)| format!("{s:>w$}", w = widths[c])).collect();
        let _ = writeln!(out, "{indent}{}", cells.join("  ").trim_end());
    }
    out
}

fn matrix(v: &Value) -> Option<Vec<Vec<String>>> {
    let rows = v.as_array()?;
    if rows.is_empty() {
        return None;
    }
    rows.iter()
        .map(|r| r.as_array().and_then(|cells| cells.iter().map(scalar).collect::<Option<Vec<_>>>()))
        .collect()
}

fn records(v: &Value) -> Option<Vec<Vec<String>>> {
    let items = v.as_array()?;
    let first = items.first()?.as_object()?;
    let keys: Vec<&String> = first.keys().collect();
    let mut rows = vec![keys.iter().map(|k| k.to_string()).collect()];
    for item in items {
        let obj = item.as_object()?;
        rows.push(keys.iter().map(|k| obj.get(*k).map(compact).unwrap_or_default()).collect());
    }
    Some(rows)
}

fn render_into(out: &mut String, v: &Value, indent: &str) {
    let Some(obj) = v.as_object() else {
        let _ = writeln!(out, "{indent}{}", compact(v));
        return;
    };
    let width = obj.keys().map(String::len).max().unwrap_or(0);
    for (key, value) in obj {
        if let Some(s) = scalar(value) {
            let _ = writeln!(out, "{indent}{key:<width$}  {s}");
        } else if let Some(rows) = matrix(value).or_else(|| records(value)) {
            let _ = writeln!(out, "{indent}{key}:");
            out.push_str(&grid(&rows, &format!("{indent}  ")));
        } else if value.is_object() {
            let _ = writeln!(out, "{indent}{key}:");
            render_into(out, value, &format!("{indent}  "));
        } else {
            let _ = writeln!(out, "{indent}{key:<width$}  {}", compact(value));
        }
    }
}

pub fn render_table(doc: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, doc, "");
    out
}
