//! File formats: tabulated spectral densities in, CSV and JSON documents out.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use reservo_core::{QubitState, C64};

use crate::config::RunConfig;
use crate::error::CliError;

/// Reads a two-column `(omega, J)` CSV. A non-numeric first row is taken as a
/// header; `#` lines are comments.
pub fn load_tabulated(path: &Path) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let bad = |m: String| CliError::Config(format!("{}: {m}", path.display()));
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| bad(e.to_string()))?;
    let (mut w, mut j) = (Vec::new(), Vec::new());
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        if rec.len() != 2 {
            return Err(bad(format!("row {}: expected 2 columns, found {}", i + 1, rec.len())));
        }
        match (rec[0].parse::<f64>(), rec[1].parse::<f64>()) {
            (Ok(a), Ok(b)) => {
                w.push(a);
                j.push(b);
            }
            _ if i == 0 => continue,
            _ => return Err(bad(format!("row {}: not a number", i + 1))),
        }
    }
    if w.len() < 2 {
        return Err(bad("need at least two samples".into()));
    }
    Ok((w, j))
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

pub fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

/// CSV document whose first line is `# config: <json>`.
pub fn csv_document(cfg: &RunConfig, header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    writeln!(buf, "# config: {}", serde_json::to_string(cfg).map_err(numeric)?).map_err(numeric)?;
    {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(&mut buf);
        w.write_record(header).map_err(numeric)?;
        for r in rows {
            w.write_record(r).map_err(numeric)?;
        }
        w.flush().map_err(numeric)?;
    }
    Ok(buf)
}

/// JSON document `{"config": ..., <body fields>}`.
pub fn json_document(cfg: &RunConfig, body: Value) -> Result<Vec<u8>, CliError> {
    let mut doc = json!({ "config": cfg });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        d.extend(b);
    }
    let mut buf = serde_json::to_vec_pretty(&doc).map_err(numeric)?;
    buf.push(b'\n');
    Ok(buf)
}

pub fn complex(z: C64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn density_matrix(s: &QubitState) -> Value {
    let m = s.matrix();
    json!([[complex(m[(0, 0)]), complex(m[(0, 1)])], [complex(m[(1, 0)]), complex(m[(1, 1)])]])
}

pub fn to_value<T: Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(numeric)
}

/// Writes to `--out`, or stdout.
pub fn emit(cfg: &RunConfig, bytes: &[u8]) -> Result<(), CliError> {
    match &cfg.out {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Config(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::Config(format!("cannot write stdout: {e}"))),
    }
}

fn numeric<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Numeric(e.to_string())
}
