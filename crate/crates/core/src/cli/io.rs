//! File formats.
//!
//! * Data CSV: header row, one integer column named `label`, every other
//!   column a real-valued feature in header order.
//! * Model file: TOML (or JSON for `.json` paths) with keys `priors`,
//!   `means`, `sigma2`, optional `d` and `truncation`; see
//!   [`crate::oracle::ModelSpec`].
//! * Priors file: TOML or JSON with `priors = [...]`, ordered by ascending
//!   label value.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use super::CliError;
use crate::oracle::GaussianMixtureModel;

/// Parsed CSV contents before validation.
#[derive(Debug, Clone, PartialEq)]
pub struct RawData {
    pub feature_names: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub labels: Vec<i64>,
}

pub fn read_csv(path: &Path) -> Result<RawData, CliError> {
    let file = fs::File::open(path)
        .map_err(|e| CliError::input("Io", format!("{}: {e}", path.display())))?;
    read_csv_from(file)
}

pub fn read_csv_from<R: std::io::Read>(reader: R) -> Result<RawData, CliError> {
    let malformed = |msg: String| CliError::input("MalformedCsv", msg);
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(|e| malformed(e.to_string()))?.clone();
    let label_col = headers
        .iter()
        .position(|h| h == "label")
        .ok_or_else(|| malformed("no `label` column in header".into()))?;
    let feature_names: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != label_col)
        .map(|(_, h)| h.to_string())
        .collect();
    if feature_names.is_empty() {
        return Err(malformed("no feature columns".into()));
    }

    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| malformed(e.to_string()))?;
        let row_no = line + 2;
        let mut row = Vec::with_capacity(feature_names.len());
        for (col, field) in record.iter().enumerate() {
            if col == label_col {
                let label = field
                    .parse::<i64>()
                    .map_err(|_| malformed(format!("line {row_no}: label `{field}` is not an integer")))?;
                labels.push(label);
            } else {
                let v = field.parse::<f64>().map_err(|_| {
                    malformed(format!("line {row_no}: `{field}` is not a number"))
                })?;
                row.push(v);
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(malformed("no data rows".into()));
    }
    Ok(RawData { feature_names, rows, labels })
}

fn read_structured<T: DeserializeOwned>(path: &Path, kind: &'static str) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input("Io", format!("{}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    if is_json {
        serde_json::from_str(&text).map_err(|e| CliError::input(kind, e.to_string()))
    } else {
        toml::from_str(&text).map_err(|e| CliError::input(kind, e.to_string()))
    }
}

pub fn load_model(path: &Path) -> Result<GaussianMixtureModel, CliError> {
    read_structured(path, "BadModelFile")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PriorsFile {
    priors: Vec<f64>,
}

pub fn load_priors(path: &Path) -> Result<Vec<f64>, CliError> {
    Ok(read_structured::<PriorsFile>(path, "BadPriorsFile")?.priors)
}

/// Writes to `path`, or standard output when `None`.
pub fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    let io_err = |e: std::io::Error| CliError::input("Io", e.to_string());
    match path {
        Some(p) => fs::write(p, content).map_err(io_err),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes()).map_err(io_err)?;
            out.flush().map_err(io_err)
        }
    }
}
