//! Number formatting and CSV plumbing shared by the data emitters.

use std::io::Write;

/// Environment variable overriding the number of significant digits.
pub const PRECISION_ENV: &str = "TOBOGGAN_PRECISION";

/// Significant digits used for every numeric field unless overridden.
pub const DEFAULT_DIGITS: usize = 17;

/// Digits from [`PRECISION_ENV`], falling back to [`DEFAULT_DIGITS`] when unset
/// or unparsable. Clamped to `1..=17`.
pub fn digits_from_env() -> usize {
    std::env::var(PRECISION_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(|d| d.clamp(1, 17))
        .unwrap_or(DEFAULT_DIGITS)
}

/// Scientific notation with `digits` significant digits.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    format!("{:.*e}", digits.saturating_sub(1), x)
}

/// Fixed-header numeric table, written as CSV.
#[derive(Debug, Clone)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W, digits: usize) -> std::io::Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        wtr.write_record(&self.header)?;
        for row in &self.rows {
            wtr.write_record(row.iter().map(|c| match c {
                Cell::Num(x) => fmt_sig(*x, digits),
                Cell::Int(i) => i.to_string(),
                Cell::Text(s) => s.clone(),
            }))?;
        }
        wtr.flush()?;
        Ok(())
    }

    /// Rows as JSON objects keyed by header name.
    pub fn to_json(&self) -> serde_json::Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(k, c)| {
                        let v = match c {
                            Cell::Num(x) => serde_json::json!(x),
                            Cell::Int(i) => serde_json::json!(i),
                            Cell::Text(s) => serde_json::json!(s),
                        };
                        (k.to_string(), v)
                    })
                    .collect::<serde_json::Map<_, _>>();
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}
