use std::fs;
use std::path::{Path, PathBuf};

use moran_core::{Error, Weights};

use crate::CliError;

/// Where the weights matrix comes from.
#[derive(Debug, Clone)]
pub enum WeightsSource {
    File { path: PathBuf, header: bool },
    Line { n: usize, q: usize },
    Complete { n: usize },
    Uniform { n: usize, a: f64, seed: u64 },
}

impl WeightsSource {
    pub fn load(&self) -> Result<Weights, CliError> {
        match self {
            WeightsSource::File { path, header } => moran_core::weights::read_csv(path, *header)
                .map_err(|e| weights_file_error(path, *header, e)),
            WeightsSource::Line { n, q } => {
                Weights::line_decay(*n, *q).map_err(|e| flag_error("--w-line", e))
            }
            WeightsSource::Complete { n } => {
                Weights::complete(*n).map_err(|e| flag_error("--w-complete", e))
            }
            WeightsSource::Uniform { n, a, seed } => {
                Weights::random_uniform(*n, *a, *seed).map_err(|e| flag_error("--w-uniform", e))
            }
        }
    }
}

fn flag_error(flag: &str, e: Error) -> CliError {
    CliError::from_core(e, |msg| format!("{flag}: {msg}"))
}

fn weights_file_error(path: &Path, header: bool, e: Error) -> CliError {
    let file = path.display();
    let offset = usize::from(header);
    let line = match &e {
        Error::ParseError { line, .. } => Some(*line),
        Error::NegativeWeight { i, .. }
        | Error::NonzeroDiagonal { i, .. }
        | Error::NonFiniteWeight { i, .. } => Some(i + 1 + offset),
        Error::NonSquare { row, .. } => Some(row + 1 + offset),
        _ => None,
    };
    CliError::from_core(e.clone(), |msg| match (&e, line) {
        (Error::ParseError { line, message }, _) => format!("{file}: line {line}: {message}"),
        (_, Some(l)) => format!("{file}: line {l}: {msg}"),
        (_, None) => format!("{file}: {msg}"),
    })
}

/// Reads a single-column observation file. A non-numeric first line is a header.
pub fn read_observations(path: &Path) -> Result<Vec<f64>, CliError> {
    let file = path.display();
    let text =
        fs::read_to_string(path).map_err(|e| CliError::validation(format!("{file}: {e}")))?;
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let field = line.split(',').next().unwrap_or("").trim();
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            Ok(_) => {
                return Err(CliError::validation(format!(
                    "{file}: line {}: non-finite value",
                    idx + 1
                )))
            }
            Err(_) if idx == 0 => {}
            Err(_) => {
                return Err(CliError::validation(format!(
                    "{file}: line {}: not a number: {field:?}",
                    idx + 1
                )))
            }
        }
        if line.split(',').count() > 1 {
            return Err(CliError::validation(format!(
                "{file}: line {}: expected a single column",
                idx + 1
            )));
        }
    }
    Ok(values)
}
