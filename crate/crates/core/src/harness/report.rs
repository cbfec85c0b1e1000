use std::io::{BufRead, Write};

use super::ScanRow;
use crate::error::{Error, Result};

/// Report serialization.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReportFormat {
    /// One JSON object per line.
    #[default]
    Jsonl,
    /// Header plus one line per row, same columns as the JSON keys.
    Csv,
}

const CSV_COLUMNS: [&str; 11] = [
    "family",
    "kind-params",
    "seed",
    "X",
    "n",
    "dmode",
    "d",
    "engine",
    "count",
    "elapsed_ms",
    "budget_hit",
];

fn io_err(e: std::io::Error) -> Error {
    Error::io("<report>", e)
}

pub fn write_rows(rows: &[ScanRow], format: ReportFormat, out: &mut dyn Write) -> Result<()> {
    match format {
        ReportFormat::Jsonl => {
            for row in rows {
                let line = serde_json::to_string(row).expect("rows serialize");
                writeln!(out, "{line}").map_err(io_err)?;
            }
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let csv_err = |e: csv::Error| Error::io("<report>", std::io::Error::other(e));
            w.write_record(CSV_COLUMNS).map_err(csv_err)?;
            for r in rows {
                let opt = |v: Option<String>| v.unwrap_or_default();
                w.write_record([
                    r.family.clone(),
                    r.params.clone(),
                    opt(r.seed.map(|s| s.to_string())),
                    r.x.to_string(),
                    r.n.to_string(),
                    r.dmode.clone(),
                    opt(r.d.clone()),
                    r.engine.clone(),
                    opt(r.count.as_ref().map(|c| c.to_string())),
                    r.elapsed_ms.to_string(),
                    r.budget_hit.to_string(),
                ])
                .map_err(csv_err)?;
            }
            w.flush().map_err(io_err)?;
        }
    }
    Ok(())
}

/// Rows of a JSONL report; blank lines are skipped, malformed ones are an
/// error.
pub fn read_rows(input: impl BufRead) -> Result<Vec<ScanRow>> {
    let mut rows = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line.map_err(io_err)?;
        if line.trim().is_empty() {
            continue;
        }
        let row = serde_json::from_str(&line).map_err(|e| Error::Parse {
            text: format!("report line {}", i + 1),
            reason: e.to_string(),
        })?;
        rows.push(row);
    }
    Ok(rows)
}
