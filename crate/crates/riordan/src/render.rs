//! Output formatting shared by the CLI: aligned text grids, JSON with
//! rationals as exact strings, and bare CSV matrices.
//!
//! Rationals always serialize as `p/q` (or plain `n` when integral) in
//! every format; no value is ever converted to floating point.

use serde_json::Value;

use crate::array::TriangleMatrix;
use crate::rational::{self, Rat};
use crate::series::Series;

/// Output format selector; parsed from the `--format` flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

impl OutputFormat {
    pub fn parse(text: &str) -> Option<OutputFormat> {
        match text {
            "text" => Some(OutputFormat::Text),
            "json" => Some(OutputFormat::Json),
            "csv" => Some(OutputFormat::Csv),
            _ => None,
        }
    }
}

/// Exact string forms of a rational slice.
pub fn rational_strings(values: &[Rat]) -> Vec<String> {
    values.iter().map(rational::render).collect()
}

/// `label: a, b, c` — a labeled comma-separated coefficient list.
pub fn coeff_line(label: &str, values: &[Rat]) -> String {
    format!("{label}: {}", rational_strings(values).join(", "))
}

/// Right-aligned triangle grid with two-space column gaps.
pub fn matrix_text(matrix: &TriangleMatrix) -> String {
    let cells: Vec<Vec<String>> =
        matrix.rows().iter().map(|row| rational_strings(row)).collect();
    let ncols = cells.last().map_or(0, |row| row.len());
    let mut widths = vec![0usize; ncols];
    for row in &cells {
        for (k, cell) in row.iter().enumerate() {
            widths[k] = widths[k].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in &cells {
        let mut line = String::new();
        for (k, cell) in row.iter().enumerate() {
            if k > 0 {
                line.push_str("  ");
            }
            line.push_str(&" ".repeat(widths[k] - cell.len()));
            line.push_str(cell);
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Matrix rows as comma-separated lines with a trailing newline.
pub fn matrix_csv(matrix: &TriangleMatrix) -> String {
    let mut out = String::new();
    for row in matrix.rows() {
        out.push_str(&rational_strings(row).join(","));
        out.push('\n');
    }
    out
}

/// Series coefficients as a JSON array of exact strings.
pub fn series_json(series: &Series) -> Value {
    Value::from(rational_strings(series.coeffs()))
}

/// Rational slice as a JSON array of exact strings.
pub fn rationals_json(values: &[Rat]) -> Value {
    Value::from(rational_strings(values))
}

/// Matrix as a JSON array of string rows.
pub fn matrix_json(matrix: &TriangleMatrix) -> Value {
    Value::from(
        matrix.rows().iter().map(|row| rational_strings(row)).collect::<Vec<_>>(),
    )
}

/// Pretty JSON document with a trailing newline. Keys serialize in sorted
/// order, making output deterministic.
pub fn json_document(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable value");
    text.push('\n');
    text
}
