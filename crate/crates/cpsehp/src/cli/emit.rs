//! Plot-data emission: CSV and JSON with 17-significant-digit round-trip
//! formatting, written atomically (temp file then rename).

use crate::error::{Error, Result};
use crate::PropertyCurve;
use std::fs;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

/// Fixed-width scientific notation: 17 significant digits round-trips any
/// f64 exactly, locale-independent.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

/// A generic numeric table with named columns; an optional prefix of
/// columns holds quantum numbers and is rendered as integers.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    integer_prefix: usize,
}

impl NumericTable {
    pub fn new(columns: &[&str]) -> Self {
        NumericTable {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            integer_prefix: 0,
        }
    }

    pub fn with_integer_prefix(mut self, count: usize) -> Self {
        self.integer_prefix = count;
        self
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn is_integer_col(&self, idx: usize) -> bool {
        idx < self.integer_prefix
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(i, &x)| {
                    if self.is_integer_col(i) {
                        format!("{}", x as i64)
                    } else {
                        format_value(x)
                    }
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let records: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (i, (name, &value)) in self.columns.iter().zip(row).enumerate() {
                    let cell = if self.is_integer_col(i) {
                        serde_json::json!(value as i64)
                    } else {
                        serde_json::json!(value)
                    };
                    obj.insert(name.clone(), cell);
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        let mut text =
            serde_json::to_string_pretty(&records).expect("numeric tables always serialize");
        text.push('\n');
        text
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

impl PropertyCurve {
    fn as_table(&self) -> NumericTable {
        let mut table = NumericTable::new(&[&self.x_label, &self.y_label]);
        for &(x, y) in &self.points {
            table.push(vec![x, y]);
        }
        table
    }
}

/// Write a curve as CSV or JSON: header row, then one (abscissa, value)
/// record per sample. An empty curve writes just the header.
pub fn emit_curve(curve: &PropertyCurve, path: &Path, format: OutputFormat) -> Result<()> {
    write_atomic(path, &curve.as_table().render(format))
}

/// Write content through a temporary sibling and rename into place.
pub fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    fs::write(&tmp, content)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Error::Io(e)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    #[test]
    fn csv_and_json_encode_identical_values() {
        let mut curve = PropertyCurve::new("r", "density");
        curve.push(0.1, 1.0 / 3.0);
        curve.push(0.2, 2.0_f64.sqrt());
        let dir = tempdir().unwrap();
        let csv_path = dir.path().join("c.csv");
        let json_path = dir.path().join("c.json");
        emit_curve(&curve, &csv_path, OutputFormat::Csv).unwrap();
        emit_curve(&curve, &json_path, OutputFormat::Json).unwrap();

        let csv = std::fs::read_to_string(&csv_path).unwrap();
        let mut from_csv = Vec::new();
        for line in csv.lines().skip(1) {
            let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
            from_csv.push((cells[0], cells[1]));
        }
        let json: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
        let from_json: Vec<(f64, f64)> = json
            .as_array()
            .unwrap()
            .iter()
            .map(|rec| {
                (
                    rec["r"].as_f64().unwrap(),
                    rec["density"].as_f64().unwrap(),
                )
            })
            .collect();
        assert_eq!(from_csv, curve.points); // 17-digit round trip is exact
        assert_eq!(from_json, curve.points);
    }

    #[test]
    fn empty_curve_writes_header_only() {
        let curve = PropertyCurve::new("x", "y");
        let dir = tempdir().unwrap();
        let path = dir.path().join("empty.csv");
        emit_curve(&curve, &path, OutputFormat::Csv).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "x,y\n");
    }

    #[test]
    fn no_temporary_left_behind() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, "n\n1\n").unwrap();
        let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(entries.len(), 1);
    }

    #[test]
    fn format_round_trips_extremes() {
        for &x in &[0.0, -0.0, 1e-300, -3.5138805677062784e0, 1.7e308, f64::MIN_POSITIVE] {
            let s = format_value(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{s}");
        }
    }
}
