//! CSV and JSON output.
//!
//! CSV files use a header row, comma separators, `.` decimals and LF line
//! endings. Floats are printed with 17 significant digits so that equal
//! inputs give byte-identical files.

use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::verification::VerificationReport;

pub const REPORT_COLUMNS: [&str; 14] =
    ["check_name", "alpha", "n", "a", "b", "r", "phi", "lhs", "rhs", "margin", "pass", "seed", "N", "M"];

/// Scientific notation with 17 significant digits; `-0` prints as `0`.
pub fn fmt_f64(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Invalid(format!("csv output failed: {e}"))
}

fn io_err(e: std::io::Error) -> Error {
    Error::Invalid(format!("write failed: {e}"))
}

/// Two-column curve (`theta,value`).
pub fn write_curve_csv<W: Write>(out: W, rows: impl Iterator<Item = (f64, f64)>) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["theta", "value"]).map_err(csv_err)?;
    for (t, v) in rows {
        w.write_record([fmt_f64(t), fmt_f64(v)]).map_err(csv_err)?;
    }
    w.flush().map_err(io_err)
}

fn report_row(r: &VerificationReport) -> Vec<String> {
    let (alpha, n, a, b) = match &r.params {
        Some(p) => (fmt_f64(p.alpha), p.n.to_string(), fmt_f64(p.a), fmt_f64(p.b)),
        None => Default::default(),
    };
    vec![
        r.check_name.clone(),
        alpha,
        n,
        a,
        b,
        fmt_f64(r.r),
        r.phi.clone(),
        fmt_f64(r.lhs),
        fmt_f64(r.rhs),
        fmt_f64(r.margin),
        r.pass.to_string(),
        r.seed.to_string(),
        r.order.to_string(),
        r.grid.to_string(),
    ]
}

pub fn write_reports_csv<W: Write>(out: W, reports: &[VerificationReport]) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(REPORT_COLUMNS).map_err(csv_err)?;
    for r in reports {
        w.write_record(report_row(r)).map_err(csv_err)?;
    }
    w.flush().map_err(io_err)
}

/// A JSON array with one object per report.
pub fn write_reports_json<W: Write>(mut out: W, reports: &[VerificationReport]) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, reports)
        .map_err(|e| Error::Invalid(format!("json output failed: {e}")))?;
    out.write_all(b"\n").map_err(io_err)
}

/// Named coefficient columns for a table `k, re_<name>, im_<name>, ...`.
pub struct CoefficientColumn<'a> {
    pub name: &'a str,
    pub coeffs: &'a [Complex64],
}

pub fn write_coefficients_csv<W: Write>(out: W, columns: &[CoefficientColumn<'_>]) -> Result<()> {
    let mut w = csv_writer(out);
    let mut header = vec!["k".to_string()];
    for c in columns {
        header.push(format!("re_{}", c.name));
        header.push(format!("im_{}", c.name));
    }
    w.write_record(&header).map_err(csv_err)?;
    let rows = columns.iter().map(|c| c.coeffs.len()).min().unwrap_or(0);
    for k in 0..rows {
        let mut row = vec![k.to_string()];
        for c in columns {
            row.push(fmt_f64(c.coeffs[k].re));
            row.push(fmt_f64(c.coeffs[k].im));
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush().map_err(io_err)
}

pub fn write_json<W: Write, T: Serialize + ?Sized>(mut out: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)
        .map_err(|e| Error::Invalid(format!("json output failed: {e}")))?;
    out.write_all(b"\n").map_err(io_err)
}
