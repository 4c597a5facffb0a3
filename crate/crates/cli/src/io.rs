//! File formats: sample tables in, reports and gridded functions out.

use std::fs;
use std::path::{Path, PathBuf};

use kgspec::potentials::SampleTable;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::report::{to_canonical_json, to_canonical_line};

#[derive(Debug, Deserialize)]
struct SampleRow {
    x: f64,
    v: f64,
}

/// Read a potential table from a CSV file with header `x,v`.
pub fn load_samples_csv(path: &Path) -> Result<SampleTable> {
    let csv_err = |source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path).map_err(csv_err)?;
    let mut xs = Vec::new();
    let mut vs = Vec::new();
    for row in reader.deserialize::<SampleRow>() {
        let row = row.map_err(csv_err)?;
        xs.push(row.x);
        vs.push(row.v);
    }
    Ok(SampleTable::new(xs, vs)?)
}

/// One row of the eigenvector file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenvectorRow {
    pub x: f64,
    pub psi_numeric: f64,
    pub psi_analytic: f64,
    #[serde(rename = "V")]
    pub v: f64,
}

pub fn write_csv_rows<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let csv_err = |source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush().map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    write_text(path, &to_canonical_json(value)?)
}

pub fn write_json_lines<T: Serialize>(path: &Path, values: &[T]) -> Result<()> {
    let mut text = String::new();
    for v in values {
        text.push_str(&to_canonical_line(v)?);
        text.push('\n');
    }
    write_text(path, &text)
}

/// Create the output directory if needed and return `dir/name`.
pub fn output_path(dir: &Path, name: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    Ok(dir.join(name))
}
