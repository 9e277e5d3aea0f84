use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use hecke_metro::scalar::{format_rational, Rational};

use crate::config::{CliResult, Format, OutputArgs};

/// One command's result: the configuration echo, table rows in column order,
/// an optional summary block and a provenance block naming what produced
/// each column.
pub struct Report {
    pub config: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Map<String, Value>>,
    pub summary: Option<Value>,
    pub provenance: Map<String, Value>,
}

/// Numbers in exact mode leave as "p/q" strings, never as floats.
pub trait Emit {
    fn emit(&self) -> Value;
}

impl Emit for Rational {
    fn emit(&self) -> Value {
        Value::String(format_rational(self))
    }
}

impl Emit for f64 {
    fn emit(&self) -> Value {
        json!(self)
    }
}

impl Report {
    pub fn new(config: Value, columns: Vec<&'static str>) -> Self {
        let mut provenance = Map::new();
        provenance.insert("tool".into(), json!(env!("CARGO_PKG_NAME")));
        provenance.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        Report {
            config,
            columns,
            rows: Vec::new(),
            summary: None,
            provenance,
        }
    }

    pub fn cite(&mut self, key: &str, value: impl Into<Value>) {
        self.provenance.insert(key.into(), value.into());
    }

    pub fn push(&mut self, row: Map<String, Value>) {
        debug_assert!(row.keys().all(|k| self.columns.contains(&k.as_str())));
        self.rows.push(row);
    }

    fn to_json(&self) -> String {
        let mut out = Map::new();
        out.insert("config".into(), self.config.clone());
        out.insert(
            "rows".into(),
            Value::Array(self.rows.iter().cloned().map(Value::Object).collect()),
        );
        if let Some(summary) = &self.summary {
            out.insert("summary".into(), summary.clone());
        }
        out.insert("provenance".into(), Value::Object(self.provenance.clone()));
        let mut text = serde_json::to_string_pretty(&Value::Object(out)).expect("JSON values serialize");
        text.push('\n');
        text
    }

    /// CSV carries the rows only; the summary goes to stderr.
    fn to_csv(&self) -> CliResult<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&self.columns).map_err(csv_error)?;
        for row in &self.rows {
            let record: Vec<String> = self.columns.iter().map(|c| cell(row.get(*c))).collect();
            writer.write_record(&record).map_err(csv_error)?;
        }
        let bytes = writer.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("CSV of UTF-8 cells"))
    }

    pub fn write(&self, target: &OutputArgs) -> CliResult<()> {
        let text = match target.format {
            Format::Json => self.to_json(),
            Format::Csv => {
                if let Some(summary) = &self.summary {
                    eprintln!("{}", serde_json::to_string(summary).expect("JSON values serialize"));
                }
                self.to_csv()?
            }
        };
        match &target.output {
            Some(path) => write_atomically(path, &text),
            None => {
                std::io::stdout().write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }
}

fn cell(value: Option<&Value>) -> String {
    match value {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

fn csv_error(err: csv::Error) -> std::io::Error {
    std::io::Error::other(err.to_string())
}

/// Readers never see a half-written file: write a sibling temp file, then rename.
fn write_atomically(path: &Path, text: &str) -> CliResult<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut file = tempfile::NamedTempFile::new_in(dir)?;
    file.write_all(text.as_bytes())?;
    file.as_file().sync_all()?;
    file.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Build a row from (column, value) pairs.
#[macro_export]
macro_rules! row {
    ($($key:literal => $value:expr),* $(,)?) => {{
        let mut map = serde_json::Map::new();
        $( map.insert($key.to_string(), serde_json::Value::from($value)); )*
        map
    }};
}
