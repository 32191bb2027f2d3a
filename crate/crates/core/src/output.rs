//! Deterministic CSV and JSON emission.
//!
//! Numbers are written with 17 significant digits in scientific notation
//! (`{:.16e}`), rows end in LF, and nothing depends on the clock or on
//! evaluation order.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::taildep::TdfEstimate;

/// Formats a number for CSV output. Non-finite values are written as
/// `inf`, `-inf` and `nan`.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

/// A header plus string-valued rows.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    /// The rows as JSON objects keyed by column name.
    pub fn to_json_rows(&self) -> Vec<serde_json::Map<String, serde_json::Value>> {
        self.rows
            .iter()
            .map(|r| {
                self.header
                    .iter()
                    .zip(r)
                    .map(|(h, v)| {
                        let value = v
                            .parse::<f64>()
                            .ok()
                            .filter(|x| x.is_finite())
                            .and_then(serde_json::Number::from_f64)
                            .map(serde_json::Value::Number)
                            .unwrap_or_else(|| serde_json::Value::String(v.clone()));
                        (h.clone(), value)
                    })
                    .collect()
            })
            .collect()
    }
}

/// The limit trace of an estimate: one row per schedule point, with the
/// direction in front and the convergence flag repeated on every row.
pub fn estimate_table(w: &[f64], est: &TdfEstimate) -> Table {
    let mut t = Table::new(direction_header(w.len()).into_iter().chain(
        ["s", "ratio", "diff", "converged"].map(String::from),
    ));
    append_estimate(&mut t, w, est);
    t
}

pub fn direction_header(dim: usize) -> Vec<String> {
    (1..=dim).map(|k| format!("w{k}")).collect()
}

/// Appends the trace of `est` to a table built by [`estimate_table`].
pub fn append_estimate(t: &mut Table, w: &[f64], est: &TdfEstimate) {
    for (s, ratio, diff) in est.rows() {
        let mut row: Vec<String> = w.iter().map(|&x| num(x)).collect();
        row.push(num(s));
        row.push(num(ratio));
        row.push(diff.map(num).unwrap_or_default());
        row.push(est.converged.to_string());
        t.push(row);
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Writes `contents` to `path` through a temporary sibling file and a
/// rename, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.partial"));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}
