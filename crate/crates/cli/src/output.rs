//! Report rendering. JSON reports are written as-is; CSV flattens a report
//! into `field,value` rows, while tables keep their own columns.
//!
//! Numbers go through serde_json, which prints the shortest decimal that
//! round-trips, so CSV and JSON carry identical values.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::ValueEnum;
use serde_json::Value;

use crate::{CliResult, Failure, OutputArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

pub struct Output {
    format: Format,
    path: Option<PathBuf>,
    header: bool,
}

impl From<&OutputArgs> for Output {
    fn from(args: &OutputArgs) -> Self {
        Self { format: args.format, path: args.out.clone(), header: !args.no_header }
    }
}

impl Output {
    pub fn report(&self, value: &Value) -> CliResult<()> {
        match self.format {
            Format::Json => self.write(|w| {
                serde_json::to_writer_pretty(&mut *w, value)?;
                writeln!(w)
            }),
            Format::Csv => {
                let mut rows = Vec::new();
                flatten("", value, &mut rows);
                self.table(&Table {
                    columns: vec!["field".into(), "value".into()],
                    rows: rows.into_iter().map(|(k, v)| vec![Value::String(k), v]).collect(),
                })
            }
        }
    }

    pub fn table(&self, table: &Table) -> CliResult<()> {
        match self.format {
            Format::Json => {
                let records: Vec<Value> = table
                    .rows
                    .iter()
                    .map(|row| Value::Object(table.columns.iter().cloned().zip(row.iter().cloned()).collect()))
                    .collect();
                self.report(&Value::Array(records))
            }
            Format::Csv => self.write(|w| {
                if self.header {
                    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
                    writeln!(w, "# normlab {} generated at unix time {secs}", env!("CARGO_PKG_VERSION"))?;
                }
                writeln!(w, "{}", table.columns.iter().map(|c| escape(c)).collect::<Vec<_>>().join(","))?;
                for row in &table.rows {
                    writeln!(w, "{}", row.iter().map(cell).collect::<Vec<_>>().join(","))?;
                }
                Ok(())
            }),
        }
    }

    fn write(&self, body: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> CliResult<()> {
        let result = match &self.path {
            Some(path) => File::create(path).and_then(|f| {
                let mut w = BufWriter::new(f);
                body(&mut w)?;
                w.flush()
            }),
            None => {
                let stdout = io::stdout();
                let mut lock = stdout.lock();
                body(&mut lock).and_then(|_| lock.flush())
            }
        };
        result.map_err(|e| match &self.path {
            Some(p) => Failure::Input(format!("--out: cannot write {}: {e}", p.display())),
            None => Failure::Computation(format!("cannot write output: {e}")),
        })
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, Value)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(&key(k), v, out)),
        Value::Array(items) => items.iter().enumerate().for_each(|(i, v)| flatten(&key(&i.to_string()), v, out)),
        leaf => out.push((prefix.to_string(), leaf.clone())),
    }
}

fn cell(value: &Value) -> String {
    match value {
        Value::String(s) => escape(s),
        Value::Null => String::new(),
        other => escape(&other.to_string()),
    }
}

fn escape(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
