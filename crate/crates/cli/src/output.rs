//! Plain, CSV and JSON renderings of command results.
//!
//! Fractions are `p/q` in plain and CSV output and `{"num": p, "den": q}` in
//! JSON; an infinite weight is `INF` everywhere. Integers that do not fit in
//! an `i64` are written as decimal strings.

use clap::ValueEnum;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use orbicover::numerics::{render, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Rat(BigRational),
    Weight(Weight),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn plain(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Rat(r) => render(r),
            Cell::Weight(w) => w.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        let big = |n: &num_bigint::BigInt| n.to_i64().map_or_else(|| Value::String(n.to_string()), Value::from);
        match self {
            Cell::Int(n) => json!(n),
            Cell::Rat(r) => json!({"num": big(r.numer()), "den": big(r.denom())}),
            Cell::Weight(Weight::Fin(w)) => json!(w),
            Cell::Weight(Weight::Inf) => json!("INF"),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<i64> for Cell {
    fn from(n: i64) -> Self {
        Cell::Int(n)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        i64::try_from(n).map_or_else(|_| Cell::Text(n.to_string()), Cell::Int)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::from(n as u64)
    }
}

impl From<u32> for Cell {
    fn from(n: u32) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<BigRational> for Cell {
    fn from(r: BigRational) -> Self {
        Cell::Rat(r)
    }
}

impl From<&BigRational> for Cell {
    fn from(r: &BigRational) -> Self {
        Cell::Rat(r.clone())
    }
}

impl From<Weight> for Cell {
    fn from(w: Weight) -> Self {
        Cell::Weight(w)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// One command's output: rows under fixed columns, plus an optional
/// free-form document such as a lifted configuration.
#[derive(Debug, Clone, Default)]
pub struct Record {
    pub command: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub document: Option<String>,
    /// Trailing summary line for plain output.
    pub summary: Option<String>,
}

impl Record {
    pub fn new(command: impl Into<String>, columns: &[&'static str]) -> Self {
        Record { command: command.into(), columns: columns.to_vec(), ..Default::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => self.plain(),
            Format::Csv => self.csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json()).expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }

    fn plain(&self) -> String {
        let mut out = String::new();
        if let Some(doc) = &self.document {
            out.push_str(doc);
            if !doc.ends_with('\n') {
                out.push('\n');
            }
        }
        for row in &self.rows {
            let fields: Vec<String> = self.columns.iter().zip(row).map(|(c, v)| format!("{c}={}", v.plain())).collect();
            out.push_str(&fields.join(" "));
            out.push('\n');
        }
        if let Some(s) = &self.summary {
            out.push_str(s);
            out.push('\n');
        }
        out
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::plain)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }

    fn json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let m: Map<String, Value> = self.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.json())).collect();
                Value::Object(m)
            })
            .collect();
        let mut top = Map::new();
        top.insert("command".into(), json!(self.command));
        top.insert("rows".into(), Value::Array(rows));
        if let Some(doc) = &self.document {
            top.insert("document".into(), json!(doc));
        }
        if let Some(s) = &self.summary {
            top.insert("summary".into(), json!(s));
        }
        Value::Object(top)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn fraction_renderings() {
        let mut r = Record::new("t", &["x", "y"]);
        r.push(vec![Cell::Rat(BigRational::new(BigInt::from(-3), BigInt::from(16))), Weight::Inf.into()]);
        assert_eq!(r.render(Format::Plain), "x=-3/16 y=INF\n");
        assert_eq!(r.render(Format::Csv), "x,y\n-3/16,INF\n");
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["rows"][0]["x"], json!({"num": -3, "den": 16}));
        assert_eq!(v["rows"][0]["y"], json!("INF"));
    }

    #[test]
    fn csv_quotes_tuples() {
        let mut r = Record::new("t", &["tuple"]);
        r.push(vec!["(6;2,3,3)".into()]);
        assert_eq!(r.render(Format::Csv), "tuple\n\"(6;2,3,3)\"\n");
    }
}
