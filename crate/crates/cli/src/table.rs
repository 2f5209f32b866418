//! Result tables and their CSV / JSON encodings.
//!
//! CSV numbers use the shortest representation that parses back to the
//! same `f64`, so `parse_csv(emit_csv(t))` reproduces the payload exactly.

use std::io::{self, Write};

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    /// `(key, value)` pairs written as `# key: value` lines.
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            meta: Vec::new(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.meta.push((key.into(), value.to_string()));
        self
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

pub fn fmt_f64(x: f64) -> String {
    let mut b = ryu::Buffer::new();
    b.format(x).to_string()
}

pub fn emit_csv(t: &Table, w: &mut impl Write) -> io::Result<()> {
    for (k, v) in &t.meta {
        // metadata must stay on one comment line
        writeln!(w, "# {k}: {}", v.replace(['\n', '\r'], " "))?;
    }
    let mut out = csv::Writer::from_writer(w);
    out.write_record(&t.columns)?;
    for r in &t.rows {
        out.write_record(r.iter().map(|&x| fmt_f64(x)))?;
    }
    out.flush()
}

/// Payload only; comment lines are skipped.
pub fn parse_csv(text: &str) -> Result<Table, String> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let columns: Vec<String> = rdr
        .headers()
        .map_err(|e| e.to_string())?
        .iter()
        .map(String::from)
        .collect();
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| e.to_string())?;
        let row = rec
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|e| format!("row {}: {s:?}: {e}", i + 1))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(Table {
        meta: Vec::new(),
        columns,
        rows,
    })
}

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// `{"meta": {..}, "columns": [..], "rows": [[..], ..]}`; non-finite
/// numbers become `null`.
pub fn to_json(t: &Table) -> Value {
    let meta: Map<String, Value> = t
        .meta
        .iter()
        .map(|(k, v)| (k.clone(), Value::String(v.clone())))
        .collect();
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|r| Value::Array(r.iter().map(|&x| num(x)).collect()))
        .collect();
    json!({ "meta": meta, "columns": t.columns, "rows": rows })
}

pub fn emit_json(t: &Table, w: &mut impl Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, &to_json(t))?;
    writeln!(w)
}
