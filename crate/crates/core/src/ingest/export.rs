//! Result tables: one labelled [`MeasureVector`] per row.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::document::SCHEMA_VERSION;
use crate::layout::Layout;
use crate::metrics::MeasureVector;

pub const CSV_HEADER: [&str; 7] = [
    "label",
    "balance",
    "equilibrium",
    "symmetry",
    "sequence",
    "rhythm",
    "av",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub label: String,
    #[serde(flatten)]
    pub measures: MeasureVector,
}

impl ResultRow {
    pub fn new(label: impl Into<String>, measures: MeasureVector) -> Self {
        ResultRow {
            label: label.into(),
            measures,
        }
    }
}

/// Single-layout evaluation as emitted by `evaluate --format json` and the
/// HTTP evaluate endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub schema_version: u32,
    pub object_count: usize,
    #[serde(flatten)]
    pub measures: MeasureVector,
}

impl EvaluationReport {
    pub fn new(layout: &Layout, measures: MeasureVector) -> Self {
        EvaluationReport {
            schema_version: SCHEMA_VERSION,
            object_count: layout.len(),
            measures,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultFormat {
    /// Four decimal places, header row, LF line endings.
    Csv,
    /// Full precision array of row objects.
    Json,
}

impl FromStr for ResultFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ResultFormat::Csv),
            "json" => Ok(ResultFormat::Json),
            other => Err(Error::Parse(format!("unknown result format `{other}`"))),
        }
    }
}

pub fn export_results(rows: &[ResultRow], format: ResultFormat) -> String {
    match format {
        ResultFormat::Csv => to_csv(rows),
        ResultFormat::Json => {
            let mut s = serde_json::to_string_pretty(rows).expect("result rows always serialize");
            s.push('\n');
            s
        }
    }
}

fn to_csv(rows: &[ResultRow]) -> String {
    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    // Writing to a Vec cannot fail.
    wtr.write_record(CSV_HEADER).unwrap();
    for row in rows {
        let m = &row.measures;
        let mut record = vec![row.label.clone()];
        record.extend([m.balance, m.equilibrium, m.symmetry, m.sequence, m.rhythm, m.av].map(|v| format!("{v:.4}")));
        wtr.write_record(&record).unwrap();
    }
    String::from_utf8(wtr.into_inner().unwrap()).unwrap()
}

pub fn parse_results_json(text: &str) -> Result<Vec<ResultRow>> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Reads the `label` column together with one numeric column of a CSV table
/// with a header row.
pub fn read_labeled_column(text: &str, column: &str) -> Result<Vec<(String, f64)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Parse(format!("missing column `{name}`")))
    };
    let label_idx = find("label")?;
    let value_idx = find(column)?;

    let mut out = Vec::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        let label = record.get(label_idx).unwrap_or_default().to_owned();
        let raw = record.get(value_idx).unwrap_or_default();
        let value: f64 = raw
            .parse()
            .map_err(|_| Error::Parse(format!("row {}: `{raw}` is not a number", line + 2)))?;
        out.push((label, value));
    }
    Ok(out)
}
