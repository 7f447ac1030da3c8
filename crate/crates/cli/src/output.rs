use std::io::Write;

use serde_json::{Map, Value as Json};
use twospin::dynamics::format_number;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_number(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    pub fn json(&self) -> Json {
        match self {
            // JSON has no infinities; keep the CSV spelling.
            Cell::Num(x) if !x.is_finite() => Json::String(format_number(*x)),
            Cell::Num(x) => Json::from(*x),
            Cell::Int(i) => Json::from(*i),
            Cell::Bool(b) => Json::Bool(*b),
            Cell::Text(s) => Json::String(s.clone()),
        }
    }
}

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "{}", self.header.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Json {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Json> = self
                    .header
                    .iter()
                    .cloned()
                    .zip(row.iter().map(Cell::json))
                    .collect();
                Json::Object(obj)
            })
            .collect();
        Json::Array(rows)
    }
}

pub enum Output {
    Table(Table),
    /// Structured result; the CSV form is the flattened `key,value` list.
    Record(Json),
}

fn flatten(prefix: &str, v: &Json, rows: &mut Vec<(String, String)>) {
    match v {
        Json::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, rows);
            }
        }
        Json::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), x, rows);
            }
        }
        Json::Number(n) => rows.push((prefix.into(), format_number(n.as_f64().unwrap_or(f64::NAN)))),
        Json::String(s) => rows.push((prefix.into(), s.replace(',', ";"))),
        Json::Bool(b) => rows.push((prefix.into(), b.to_string())),
        Json::Null => rows.push((prefix.into(), String::new())),
    }
}

impl Output {
    pub fn write<W: Write>(&self, out: &mut W, json: bool) -> std::io::Result<()> {
        match (self, json) {
            (Output::Table(t), false) => t.write_csv(out),
            (Output::Table(t), true) => write_json(out, &t.to_json()),
            (Output::Record(v), true) => write_json(out, v),
            (Output::Record(v), false) => {
                let mut rows = Vec::new();
                flatten("", v, &mut rows);
                writeln!(out, "key,value")?;
                for (k, x) in rows {
                    writeln!(out, "{k},{x}")?;
                }
                Ok(())
            }
        }
    }
}

fn write_json<W: Write>(out: &mut W, v: &Json) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)
}
