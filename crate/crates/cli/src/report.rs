use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::args::{Format, OutputArgs};
use crate::CliError;

/// A row of a tabular report.
pub trait Record: Serialize {
    fn headers() -> &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

/// Shortest round-trip form, `inf`/`-inf` for infinities.
pub fn format_float(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:?}")
    }
}

/// A complete report: the resolved configuration, the rows and a summary.
#[derive(Debug, Serialize)]
pub struct Report<'a, R: Record> {
    pub header: Value,
    pub records: &'a [R],
    pub summary: Value,
}

fn csv_bytes<R: Record>(records: &[R]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Runtime(format!("CSV encoding failed: {e}"));
    w.write_record(R::headers()).map_err(io)?;
    for r in records {
        w.write_record(r.fields()).map_err(io)?;
    }
    w.into_inner()
        .map_err(|e| CliError::Runtime(format!("CSV encoding failed: {e}")))
}

fn json_bytes<R: Record>(report: &Report<'_, R>) -> Result<Vec<u8>, CliError> {
    let mut out = serde_json::to_vec_pretty(report)
        .map_err(|e| CliError::Runtime(format!("JSON encoding failed: {e}")))?;
    out.push(b'\n');
    Ok(out)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
}

/// `<out>.json` next to a CSV file (`report.csv` → `report.json`).
pub fn companion_path(out: &Path) -> PathBuf {
    out.with_extension("json")
}

/// Writes the report in the requested format to `--out`, or to stdout.
///
/// CSV written to a file also produces the companion JSON object
/// `{header, records, summary}`; on stdout only the CSV is printed.
pub fn emit_report<R: Record>(report: &Report<'_, R>, output: &OutputArgs) -> Result<(), CliError> {
    let main = match output.format {
        Format::Csv => csv_bytes(report.records)?,
        Format::Json => json_bytes(report)?,
    };
    match &output.out {
        Some(path) => {
            let companion = companion_path(path);
            if output.format == Format::Csv && companion == *path {
                return Err(CliError::Usage(format!(
                    "--out {} leaves no room for the companion JSON file",
                    path.display()
                )));
            }
            write_file(path, &main)?;
            if output.format == Format::Csv {
                write_file(&companion, &json_bytes(report)?)?;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&main)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Runtime(format!("cannot write to stdout: {e}")))?;
        }
    }
    Ok(())
}
