use lw_core::trop_path::trop_path_point;
use lw_core::tropical::Q;
use serde_json::{Map, Value};

/// Rows of strings; exact values stay exact in both CSV and JSON.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self::from_header(header.iter().map(|s| s.to_string()).collect())
    }

    pub fn from_header(header: Vec<String>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Two columns, `key,value`, from a flat JSON object.
    pub fn key_value(v: &Value) -> Self {
        let mut t = Table::new(&["key", "value"]);
        if let Value::Object(m) = v {
            for (k, x) in m {
                let s = match x {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                t.push(vec![k.clone(), s]);
            }
        }
        t
    }

    pub fn to_csv(&self) -> Result<String, String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).map_err(|e| e.to_string())?;
        for r in &self.rows {
            w.write_record(r).map_err(|e| e.to_string())?;
        }
        String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| Value::Object(self.header.iter().cloned().zip(r.iter().map(|s| Value::String(s.clone()))).collect::<Map<_, _>>()))
                .collect(),
        )
    }
}

pub fn trop_path(r: usize, lambdas: &[Q]) -> Table {
    let mut head = vec!["lambda".to_string()];
    for (name, k) in [("x", 2 * r), ("w", 3 * r - 1), ("s", 2 * r), ("y", 3 * r - 1)] {
        head.extend((1..=k).map(|i| format!("{name}_{i}")));
    }
    let mut t = Table::from_header(head);
    for l in lambdas {
        let p = trop_path_point(r, l);
        let mut row = vec![l.to_string()];
        row.extend(p.full().entries().iter().map(|e| e.to_string()));
        t.push(row);
    }
    t
}
