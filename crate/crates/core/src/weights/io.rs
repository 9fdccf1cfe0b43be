//! Dense CSV interchange: one matrix row per line, optional single header row.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::fmt::g17;
use crate::scalar::Scalar;
use crate::weights::WeightsMatrix;

/// Reads a dense weights matrix from `path`. With `has_header` the first
/// line is skipped unconditionally.
pub fn read_csv<T: Scalar>(path: impl AsRef<Path>, has_header: bool) -> Result<WeightsMatrix<T>> {
    from_reader(File::open(path)?, has_header)
}

pub fn from_reader<T: Scalar>(rdr: impl Read, has_header: bool) -> Result<WeightsMatrix<T>> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(rdr);
    let mut rows: Vec<Vec<T>> = Vec::new();
    let mut width = None;
    for record in csv.records() {
        let record = record.map_err(|e| Error::ParseError {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .map(|field| {
                field
                    .parse::<f64>()
                    .map(T::lit)
                    .map_err(|_| Error::ParseError {
                        line,
                        message: format!("not a number: {field:?}"),
                    })
            })
            .collect::<Result<Vec<T>>>()?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(Error::ParseError {
                    line,
                    message: format!("expected {w} fields, found {}", row.len()),
                })
            }
            Some(_) => {}
        }
        rows.push(row);
    }
    WeightsMatrix::from_rows(&rows)
}

/// Writes `w` with 17 significant digits per entry and no header.
pub fn write_csv<T: Scalar>(w: &WeightsMatrix<T>, path: impl AsRef<Path>) -> Result<()> {
    let mut f = File::create(path)?;
    to_writer(w, &mut f)
}

pub fn to_writer<T: Scalar>(w: &WeightsMatrix<T>, out: &mut impl Write) -> Result<()> {
    for i in 0..w.n() {
        let line: Vec<String> = w
            .matrix()
            .row(i)
            .iter()
            .map(|x| g17(x.to_f64_lossy()))
            .collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}
