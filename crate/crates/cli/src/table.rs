use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::RunError;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(k) => k.to_string(),
            Cell::Num(x) => x.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(k: usize) -> Self {
        Cell::Int(k as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// Rectangular data with named columns.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    /// From serializable records; columns follow the first record's fields.
    pub fn from_records<T: Serialize>(records: &[T]) -> Result<Self, RunError> {
        let mut table = Table::default();
        for r in records {
            let serde_json::Value::Object(map) = serde_json::to_value(r)? else {
                unreachable!("records serialize as objects");
            };
            if table.columns.is_empty() {
                table.columns = map.keys().cloned().collect();
            }
            let row = table
                .columns
                .iter()
                .map(|c| match &map[c] {
                    serde_json::Value::Number(x) if x.is_i64() => Cell::Int(x.as_i64().unwrap()),
                    serde_json::Value::Number(x) => Cell::Num(x.as_f64().unwrap()),
                    serde_json::Value::String(s) => Cell::Text(s.clone()),
                    other => Cell::Text(other.to_string()),
                })
                .collect();
            table.rows.push(row);
        }
        Ok(table)
    }

    /// RFC 4180 CSV with a header row.
    pub fn write_csv(&self, path: &Path) -> Result<(), RunError> {
        let mut w = csv::Writer::from_path(path).map_err(|e| RunError::csv(path, e))?;
        w.write_record(&self.columns).map_err(|e| RunError::csv(path, e))?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(|e| RunError::csv(path, e))?;
        }
        w.flush().map_err(|e| RunError::io(path, e))
    }

    /// Array of objects with sorted keys.
    pub fn write_json(&self, path: &Path) -> Result<(), RunError> {
        let records: Vec<BTreeMap<&str, &Cell>> =
            self.rows.iter().map(|r| self.columns.iter().map(String::as_str).zip(r.iter()).collect()).collect();
        write_json(path, &records)
    }
}

/// Serializes with object keys in sorted order and a trailing newline.
pub fn to_sorted_json<T: Serialize>(value: &T) -> Result<String, RunError> {
    fn sort(v: serde_json::Value) -> serde_json::Value {
        match v {
            serde_json::Value::Object(map) => {
                let sorted: BTreeMap<String, serde_json::Value> = map.into_iter().map(|(k, v)| (k, sort(v))).collect();
                serde_json::Value::Object(sorted.into_iter().collect())
            }
            serde_json::Value::Array(a) => serde_json::Value::Array(a.into_iter().map(sort).collect()),
            other => other,
        }
    }
    let v = sort(serde_json::to_value(value)?);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), RunError> {
    let text = to_sorted_json(value)?;
    let mut f = std::fs::File::create(path).map_err(|e| RunError::io(path, e))?;
    f.write_all(text.as_bytes()).map_err(|e| RunError::io(path, e))
}
