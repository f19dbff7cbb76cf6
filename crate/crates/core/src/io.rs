//! CSV interchange. Every file has a header row; numbers are written with 17
//! significant digits and rows end in `\n`. Writes go to a temporary file in
//! the target directory that is renamed into place.

use std::path::Path;

use num_complex::Complex64;

use crate::bargmann::{HalflineFunction, Interpolation};
use crate::ct_core::VerticalSymbol;
use crate::error::{Error, Result};
use crate::wavelet::{CWTPlane, SampledSignal};

/// Relative deviation from uniform spacing accepted when reading signals.
pub const SPACING_TOL: f64 = 1e-9;

/// Formats `x` with 17 significant digits.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io { path: path.display().to_string(), detail: e.to_string() }
}

fn format_err(path: &Path, detail: impl Into<String>) -> Error {
    Error::Format { path: path.display().to_string(), detail: detail.into() }
}

/// Writes `header` and `rows` to `out`.
pub fn write_csv_to<W, I, R>(out: W, header: &[&str], rows: I) -> Result<()>
where
    W: std::io::Write,
    I: IntoIterator<Item = R>,
    R: AsRef<[f64]>,
{
    let stream = |e: csv::Error| Error::Io { path: "<stream>".into(), detail: e.to_string() };
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(header).map_err(stream)?;
    for row in rows {
        let row = row.as_ref();
        if row.len() != header.len() {
            return Err(Error::Invalid(format!("row of {} fields under a {}-column header", row.len(), header.len())));
        }
        w.write_record(row.iter().map(|x| fmt_num(*x))).map_err(stream)?;
    }
    w.flush().map_err(|e| Error::Io { path: "<stream>".into(), detail: e.to_string() })
}

/// Writes `header` and `rows` to `path` atomically.
pub fn write_csv<I, R>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: AsRef<[f64]>,
{
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_err(path, e))?;
    write_csv_to(tmp.as_file(), header, rows).map_err(|e| match e {
        Error::Io { detail, .. } => io_err(path, detail),
        other => other,
    })?;
    tmp.as_file().sync_all().map_err(|e| io_err(path, e))?;
    tmp.persist(path).map_err(|e| io_err(path, e.error))?;
    Ok(())
}

/// Reads a numeric CSV whose header is one of `headers`; returns the index of
/// the matching header and the rows.
pub fn read_csv(path: &Path, headers: &[&[&str]]) -> Result<(usize, Vec<Vec<f64>>)> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path).map_err(|e| io_err(path, e))?;
    let found: Vec<String> = r.headers().map_err(|e| io_err(path, e))?.iter().map(str::to_owned).collect();
    let which = headers
        .iter()
        .position(|h| h.len() == found.len() && h.iter().zip(&found).all(|(a, b)| *a == b))
        .ok_or_else(|| {
            let wanted: Vec<String> = headers.iter().map(|h| h.join(",")).collect();
            format_err(path, format!("header '{}' is not one of: {}", found.join(","), wanted.join(" | ")))
        })?;
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| format_err(path, e.to_string()))?;
        let row = rec
            .iter()
            .map(|s| s.parse::<f64>().map_err(|_| format_err(path, format!("row {}: '{s}' is not a number", i + 1))))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok((which, rows))
}

/// `t,re,im`.
pub fn write_signal(path: &Path, s: &SampledSignal) -> Result<()> {
    write_csv(path, &["t", "re", "im"], s.samples.iter().enumerate().map(|(n, z)| [s.time(n), z.re, z.im]))
}

/// Reads `t,re,im` (or `t,re` for real signals); the times must be uniformly
/// spaced.
pub fn read_signal(path: &Path) -> Result<SampledSignal> {
    let (_, rows) = read_csv(path, &[&["t", "re", "im"], &["t", "re"]])?;
    if rows.len() < 2 {
        return Err(format_err(path, "a signal needs at least two samples"));
    }
    let t0 = rows[0][0];
    let dt = (rows[rows.len() - 1][0] - t0) / (rows.len() - 1) as f64;
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(format_err(path, "times must increase"));
    }
    for (n, row) in rows.iter().enumerate() {
        if ((row[0] - t0) / dt - n as f64).abs() > SPACING_TOL * rows.len() as f64 {
            return Err(format_err(path, format!("row {}: time {} breaks uniform spacing {dt}", n + 1, row[0])));
        }
    }
    let samples = rows.iter().map(|r| Complex64::new(r[1], r.get(2).copied().unwrap_or(0.0))).collect();
    SampledSignal::new(samples, 1.0 / dt, t0)
}

/// `u,v,re,im`, scale-major.
pub fn write_plane(path: &Path, p: &CWTPlane) -> Result<()> {
    let rows = (0..p.nv()).flat_map(|j| (0..p.nu()).map(move |n| (n, j))).map(|(n, j)| {
        let z = p.get(n, j);
        [p.u_grid[n], p.v_grid[j], z.re, z.im]
    });
    write_csv(path, &["u", "v", "re", "im"], rows)
}

/// `xi,re,im`.
pub fn write_halfline(path: &Path, f: &HalflineFunction) -> Result<()> {
    write_csv(path, &["xi", "re", "im"], f.xi_grid.iter().zip(&f.values).map(|(x, z)| [*x, z.re, z.im]))
}

pub fn read_halfline(path: &Path, interpolation: Interpolation) -> Result<HalflineFunction> {
    let (_, rows) = read_csv(path, &[&["xi", "re", "im"]])?;
    HalflineFunction::new(
        rows.iter().map(|r| r[0]).collect(),
        rows.iter().map(|r| Complex64::new(r[1], r[2])).collect(),
        interpolation,
    )
}

/// A tabulated symbol from `v,re,im` or `v,re`.
pub fn read_tabulated_symbol(path: &Path) -> Result<VerticalSymbol> {
    let (_, rows) = read_csv(path, &[&["v", "re", "im"], &["v", "re"]])?;
    VerticalSymbol::tabulated(
        rows.iter().map(|r| r[0]).collect(),
        rows.iter().map(|r| Complex64::new(r[1], r.get(2).copied().unwrap_or(0.0))).collect(),
    )
}
