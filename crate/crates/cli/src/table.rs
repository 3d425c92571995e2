use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

use crate::config::{OutputFormat, RunConfig};
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format_sig(*v, 6),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

/// `x` to `digits` significant digits in the style of C's `%g`.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Table {
            name: name.into(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("in-memory write");
        String::from_utf8(buf).expect("utf-8 csv")
    }

    fn json_rows(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> =
                        self.header.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// Result of one command: tables, optional diagnostics and notes that go
/// to standard error.
#[derive(Debug, Clone)]
pub struct Report {
    pub config: RunConfig,
    pub tables: Vec<Table>,
    pub diagnostics: Option<Value>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(config: &RunConfig) -> Self {
        Report {
            config: config.clone(),
            tables: Vec::new(),
            diagnostics: None,
            notes: Vec::new(),
        }
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn to_json(&self) -> Value {
        let mut tables = Map::new();
        for t in &self.tables {
            tables.insert(t.name.clone(), t.json_rows());
        }
        let mut doc = Map::new();
        doc.insert("config".into(), serde_json::to_value(&self.config).expect("config serializes"));
        doc.insert("tables".into(), Value::Object(tables));
        if let Some(d) = &self.diagnostics {
            doc.insert("diagnostics".into(), d.clone());
        }
        Value::Object(doc)
    }

    /// Files written for `path`: the path itself for a single CSV table,
    /// `<stem>.<table>.csv` siblings for several.
    pub fn csv_paths(&self, path: &Path) -> Vec<PathBuf> {
        if self.tables.len() == 1 {
            return vec![path.to_path_buf()];
        }
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        self.tables
            .iter()
            .map(|t| path.with_file_name(format!("{stem}.{}.csv", t.name)))
            .collect()
    }

    /// Writes the report to `path`, or to standard output when `None`.
    pub fn write(&self, path: Option<&Path>, format: OutputFormat) -> Result<Vec<PathBuf>, CliError> {
        match (format, path) {
            (OutputFormat::Json, None) => {
                let mut out = std::io::stdout().lock();
                serde_json::to_writer_pretty(&mut out, &self.to_json())?;
                writeln!(out)?;
                Ok(Vec::new())
            }
            (OutputFormat::Json, Some(p)) => {
                let text = serde_json::to_string_pretty(&self.to_json())?;
                std::fs::write(p, text + "\n")?;
                Ok(vec![p.to_path_buf()])
            }
            (OutputFormat::Csv, None) => {
                let mut out = std::io::stdout().lock();
                for (i, t) in self.tables.iter().enumerate() {
                    if i > 0 {
                        writeln!(out)?;
                    }
                    t.write_csv(&mut out)?;
                }
                Ok(Vec::new())
            }
            (OutputFormat::Csv, Some(p)) => {
                let paths = self.csv_paths(p);
                for (t, file) in self.tables.iter().zip(&paths) {
                    t.write_csv(std::fs::File::create(file)?)?;
                }
                if let Some(d) = &self.diagnostics {
                    let file = p.with_extension("diagnostics.json");
                    std::fs::write(&file, serde_json::to_string_pretty(d)? + "\n")?;
                }
                Ok(paths)
            }
        }
    }
}
