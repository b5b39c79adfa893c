//! Betti-table documents: a small JSON format with field-level errors.
//!
//! ```json
//! {"n": 3, "d": 3, "columns": [{"k": 1, "degrees": [1, 1, 2, 2, 2]}, {"k": 2, "degrees": [3, 3]}]}
//! ```

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use singulus_core::BettiTable;

/// A schema violation, naming the offending field path.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{message}", if path.is_empty() { String::new() } else { format!("{path}: ") })]
pub struct DocumentError {
    pub path: String,
    pub message: String,
}

fn err(path: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError {
        path: path.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTableDocument {
    pub table: BettiTable,
    pub label: Option<String>,
    pub source: Option<String>,
}

#[derive(Serialize)]
struct ColumnOut<'a> {
    degrees: &'a [u64],
    k: usize,
}

#[derive(Serialize)]
struct DocumentOut<'a> {
    columns: Vec<ColumnOut<'a>>,
    d: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<&'a str>,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    source: Option<&'a str>,
}

fn integer(v: &Value, path: &str) -> Result<i64, DocumentError> {
    v.as_i64().ok_or_else(|| err(path, format!("expected an integer, found {v}")))
}

impl BettiTableDocument {
    pub fn new(table: BettiTable) -> Self {
        BettiTableDocument {
            table,
            label: None,
            source: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let value: Value = serde_json::from_str(text).map_err(|e| err("", format!("invalid JSON: {e}")))?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self, DocumentError> {
        let obj = value.as_object().ok_or_else(|| err("", "expected a JSON object"))?;
        if let Some(key) = obj.keys().find(|k| !["n", "d", "columns", "label", "source"].contains(&k.as_str())) {
            return Err(err(key.as_str(), "unknown field"));
        }
        let field = |name: &str| obj.get(name).ok_or_else(|| err(name, "missing field"));
        let n = integer(field("n")?, "n")?;
        if n < 2 {
            return Err(err("n", format!("must be at least 2 (got {n})")));
        }
        let d = integer(field("d")?, "d")?;
        if d < 3 {
            return Err(err("d", format!("must be at least 3 (got {d})")));
        }
        let n = n as usize;
        let raw = field("columns")?
            .as_array()
            .ok_or_else(|| err("columns", "expected an array"))?;
        let mut columns: Vec<Option<Vec<u64>>> = vec![None; n];
        for (i, entry) in raw.iter().enumerate() {
            let path = format!("columns[{i}]");
            let col = entry
                .as_object()
                .ok_or_else(|| err(path.as_str(), "expected an object with fields k and degrees"))?;
            if let Some(key) = col.keys().find(|k| !["k", "degrees"].contains(&k.as_str())) {
                return Err(err(format!("{path}.{key}"), "unknown field"));
            }
            let kpath = format!("{path}.k");
            let k = integer(col.get("k").ok_or_else(|| err(kpath.as_str(), "missing field"))?, &kpath)?;
            if k < 1 || k as usize > n {
                return Err(err(kpath, format!("must lie in 1..={n} (got {k})")));
            }
            let k = k as usize;
            if columns[k - 1].is_some() {
                return Err(err(kpath, format!("column {k} appears twice")));
            }
            let dpath = format!("{path}.degrees");
            let degrees = col
                .get("degrees")
                .ok_or_else(|| err(dpath.as_str(), "missing field"))?
                .as_array()
                .ok_or_else(|| err(dpath.as_str(), "expected an array"))?;
            let mut out = Vec::with_capacity(degrees.len());
            for (j, v) in degrees.iter().enumerate() {
                let path = format!("{dpath}[{j}]");
                let x = integer(v, &path)?;
                if x < 0 {
                    return Err(err(path, format!("must be non-negative (got {x})")));
                }
                out.push(x as u64);
            }
            columns[k - 1] = Some(out);
        }
        let text = |name: &str| -> Result<Option<String>, DocumentError> {
            match obj.get(name) {
                None | Some(Value::Null) => Ok(None),
                Some(Value::String(s)) => Ok(Some(s.clone())),
                Some(v) => Err(err(name, format!("expected a string, found {v}"))),
            }
        };
        let table = BettiTable::new(n, d as u64, columns.into_iter().map(Option::unwrap_or_default).collect())
            .map_err(|e| err("", e.to_string()))?;
        Ok(BettiTableDocument {
            table,
            label: text("label")?,
            source: text("source")?,
        })
    }

    /// Sorted keys, every column `1..=n` present in order, sorted degrees,
    /// two-space indentation and a trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let doc = DocumentOut {
            columns: self
                .table
                .columns()
                .iter()
                .enumerate()
                .map(|(i, c)| ColumnOut { degrees: c, k: i + 1 })
                .collect(),
            d: self.table.d(),
            label: self.label.as_deref(),
            n: self.table.n(),
            source: self.source.as_deref(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }
}
