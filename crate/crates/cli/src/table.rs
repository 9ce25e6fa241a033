//! Tabular output shared by every subcommand.

use std::io::Write;

use serde_json::{json, Map, Value};

/// One table cell. Non-finite numbers are written as `NaN`/`inf` in CSV and
/// `null` in JSON.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Cell {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Cell {
        Cell::Int(x as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Cell {
        Cell::Text(s.to_string())
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) if x.is_finite() => format!("{x:.16e}"),
            Cell::Num(x) if x.is_nan() => "NaN".to_string(),
            Cell::Num(x) => if *x > 0.0 { "inf" } else { "-inf" }.to_string(),
            Cell::Int(k) => k.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Int(k) => json!(k),
            Cell::Text(s) => json!(s),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub struct Table {
    pub command: String,
    pub params: Map<String, Value>,
    /// Grid description, when the rows come from a grid.
    pub axes: Value,
    /// Command-specific scalars (maxima, acceptance rates, ...); JSON only.
    pub summary: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &str, columns: &[&str]) -> Table {
        Table {
            command: command.to_string(),
            params: Map::new(),
            axes: Value::Null,
            summary: Map::new(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Table {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn note(&mut self, key: &str, value: f64) -> &mut Table {
        self.summary.insert(key.to_string(), Cell::Num(value).json());
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()
    }

    fn write_json(&self, out: &mut dyn Write) -> std::io::Result<()> {
        // the timestamp only comes from the environment, so reruns stay byte-identical
        let timestamp = std::env::var("SOURCE_DATE_EPOCH")
            .ok()
            .and_then(|s| s.trim().parse::<i64>().ok())
            .map_or(Value::Null, |t| json!(t));
        let doc = json!({
            "meta": {
                "command": self.command,
                "params": self.params,
                "timestamp": timestamp,
                "version": env!("CARGO_PKG_VERSION"),
                "summary": self.summary,
            },
            "axes": self.axes,
            "columns": self.columns,
            "rows": self.rows.iter().map(|r| r.iter().map(Cell::json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        });
        serde_json::to_writer_pretty(&mut *out, &doc)?;
        writeln!(out)
    }
}
