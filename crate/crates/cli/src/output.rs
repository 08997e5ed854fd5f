//! CSV and JSON writers. CSV carries 12 significant digits, LF line
//! endings, and a fixed column order; identical runs produce byte-identical
//! files.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::args::{CliError, CliResult};

/// One CSV cell.
#[derive(Clone, Debug)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Bool(bool),
}

impl Cell {
    fn write(&self, out: &mut dyn Write) -> std::io::Result<()> {
        match self {
            // 12 significant digits; NaN marks undefined values (outside
            // the classical support and the like).
            Cell::Float(x) if x.is_nan() => write!(out, "nan"),
            Cell::Float(x) => write!(out, "{x:.11e}"),
            Cell::Int(v) => write!(out, "{v}"),
            Cell::Bool(b) => write!(out, "{b}"),
        }
    }

    pub fn json(&self) -> Value {
        match self {
            Cell::Float(x) => serde_json::Number::from_f64(*x)
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Int(v) => Value::from(*v),
            Cell::Bool(b) => Value::from(*b),
        }
    }
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            for (k, cell) in row.iter().enumerate() {
                if k > 0 {
                    write!(out, ",")?;
                }
                cell.write(out)?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    /// JSON rendering of the same table, wrapped in the versioned envelope.
    pub fn json(&self, kind: &str, params: Value) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Array(row.iter().map(Cell::json).collect()))
            .collect();
        serde_json::json!({
            "schema_version": crate::args::SCHEMA_VERSION,
            "kind": kind,
            "params": params,
            "columns": self.columns,
            "data": rows,
        })
    }
}

fn open_sink(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    match path {
        Some(p) => {
            if let Some(parent) = p.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            Ok(Box::new(BufWriter::new(File::create(p)?)))
        }
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

pub fn write_table_csv(path: Option<&PathBuf>, table: &Table) -> CliResult<()> {
    let mut sink = open_sink(path.map(|p| p.as_path()))?;
    table.write_csv(&mut sink)?;
    sink.flush()?;
    Ok(())
}

pub fn write_json(path: Option<&PathBuf>, value: &Value) -> CliResult<()> {
    let mut sink = open_sink(path.map(|p| p.as_path()))?;
    serde_json::to_writer_pretty(&mut sink, value).map_err(|e| {
        if e.io_error_kind() == Some(std::io::ErrorKind::BrokenPipe) {
            CliError::BrokenPipe
        } else {
            CliError::Runtime(format!("json encoding failed: {e}"))
        }
    })?;
    writeln!(sink)?;
    sink.flush()?;
    Ok(())
}
