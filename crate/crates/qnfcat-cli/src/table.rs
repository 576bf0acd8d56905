//! Result tables and their CSV/JSON encodings.
//!
//! Floats are written with 17 significant digits in scientific notation so
//! that identical runs give byte-identical files and values round-trip.

use std::str::FromStr;

use serde_json::{json, Map, Number, Value as Json};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else if x == 0.0 {
        "0.0000000000000000e0".into()
    } else {
        format!("{x:.16e}")
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    pub fn to_json(&self) -> Json {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) if v.is_finite() => {
                Json::Number(Number::from_str(&format_float(*v)).expect("finite float literal"))
            }
            Cell::Float(_) | Cell::Empty => Json::Null,
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let wrap = |e: csv::Error| CliError::numeric("csv", e);
        w.write_record(&self.columns).map_err(wrap)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(wrap)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::numeric("csv", e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv of UTF-8 fields"))
    }

    /// JSON document: `envelope` keys first, then `columns` and `rows`.
    pub fn to_json(&self, envelope: Map<String, Json>) -> String {
        let mut doc = envelope;
        doc.insert("columns".into(), json!(self.columns));
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    m.insert((*col).to_string(), cell.to_json());
                }
                Json::Object(m)
            })
            .collect();
        doc.insert("rows".into(), Json::Array(rows));
        let mut s = serde_json::to_string_pretty(&Json::Object(doc)).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_seventeen_digits() {
        let x = 0.1 + 0.2;
        let s = format_float(x);
        assert_eq!(s, "3.0000000000000004e-1");
        assert_eq!(s.parse::<f64>().unwrap(), x);
    }

    #[test]
    fn csv_quotes_commas() {
        let mut t = Table::new(&["name", "value"]);
        t.push(vec!["a,b".into(), 1.5.into()]);
        t.push(vec![Cell::Empty, Cell::Int(-3)]);
        assert_eq!(
            t.to_csv().unwrap(),
            "name,value\n\"a,b\",1.5000000000000000e0\n,-3\n"
        );
    }

    #[test]
    fn json_keeps_column_order_and_nulls() {
        let mut t = Table::new(&["z", "a"]);
        t.push(vec![f64::NAN.into(), 2.0.into()]);
        let doc: Json = serde_json::from_str(&t.to_json(Map::new())).unwrap();
        assert_eq!(doc["columns"], json!(["z", "a"]));
        assert!(doc["rows"][0]["z"].is_null());
        let keys: Vec<_> = doc["rows"][0].as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["z", "a"]);
    }
}
