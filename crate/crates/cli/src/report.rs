//! One report model, three renderings. Output is byte-stable: every number
//! is rounded to twelve significant digits before formatting, tables are
//! padded from computed column widths, and the JSON renderer preserves key
//! order so that parsing it and re-serializing reproduces the exact bytes.

use std::env;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{Map, Number, Value};

use crate::config::Format;

/// Round to twelve significant decimal digits (the precision everything is
/// printed with), returning the nearest double to the rounded decimal.
pub fn round12(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.11e}").parse().expect("rounded double reparses")
}

#[derive(Debug, Clone)]
pub enum Cell {
    Text(String),
    Num(f64),
    /// Small magnitudes (deltas, residuals) rendered in scientific notation.
    Sci(f64),
    Int(i64),
    Flag(bool),
    Missing,
}

impl Cell {
    fn to_text(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(v) => format!("{}", round12(*v)),
            Cell::Sci(v) => format!("{v:.3e}"),
            Cell::Int(v) => format!("{v}"),
            Cell::Flag(b) => if *b { "yes" } else { "no" }.into(),
            Cell::Missing => "-".into(),
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Cell::Text(s) => csv_escape(s),
            Cell::Flag(b) => format!("{b}"),
            Cell::Missing => String::new(),
            other => other.to_text(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Num(v) | Cell::Sci(v) => Number::from_f64(round12(*v))
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Int(v) => Value::Number((*v).into()),
            Cell::Flag(b) => Value::Bool(*b),
            Cell::Missing => Value::Null,
        }
    }

    fn right_aligned(&self) -> bool {
        matches!(self, Cell::Num(_) | Cell::Sci(_) | Cell::Int(_))
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// The outcome of one command: a column-ordered table, free-form notes
/// (comparison diagnostics, off-reference flags), and the overall verdict
/// that decides the exit code.
#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
    pub passed: bool,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_text(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        let rendered: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(Cell::to_text).collect())
            .collect();
        for row in &rendered {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(cell.len());
            }
        }
        let mut out = format!("zeta-region {}\n\n", self.command);
        let header: Vec<String> = self
            .columns
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(header.join("  ").trim_end());
        out.push('\n');
        for (cells, row) in self.rows.iter().zip(&rendered) {
            let line: Vec<String> = cells
                .iter()
                .zip(row)
                .zip(&widths)
                .map(|((cell, s), w)| {
                    if cell.right_aligned() {
                        format!("{s:>w$}")
                    } else {
                        format!("{s:<w$}")
                    }
                })
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        if !self.notes.is_empty() {
            out.push('\n');
            for note in &self.notes {
                out.push_str(note);
                out.push('\n');
            }
        }
        out.push_str(if self.passed { "\nresult: ok\n" } else { "\nresult: fail\n" });
        out
    }

    fn render_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::to_csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let mut root = Map::new();
        root.insert("command".into(), Value::String(self.command.into()));
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    obj.insert((*col).into(), cell.to_json());
                }
                Value::Object(obj)
            })
            .collect();
        root.insert("records".into(), Value::Array(records));
        root.insert(
            "notes".into(),
            Value::Array(self.notes.iter().map(|n| Value::String(n.clone())).collect()),
        );
        root.insert("passed".into(), Value::Bool(self.passed));
        let mut s = serde_json::to_string_pretty(&Value::Object(root))
            .expect("report serializes");
        s.push('\n');
        s
    }
}

/// Print to stdout; when the output-directory override is set, also write
/// the same bytes to <dir>/<command>.<ext>. CSV keeps its stream pure data,
/// so the notes go to stderr in that format.
pub fn emit(report: &Report, format: Format) -> Result<()> {
    let rendered = report.render(format);
    print!("{rendered}");
    if format == Format::Csv {
        for note in &report.notes {
            eprintln!("{note}");
        }
    }
    if let Ok(dir) = env::var("ZETA_REGION_OUT_DIR") {
        if !dir.is_empty() {
            fs::create_dir_all(&dir)
                .with_context(|| format!("cannot create output directory {dir}"))?;
            let path = Path::new(&dir).join(format!("{}.{}", report.command, format.extension()));
            fs::write(&path, rendered.as_bytes())
                .with_context(|| format!("cannot write {}", path.display()))?;
        }
    }
    Ok(())
}
