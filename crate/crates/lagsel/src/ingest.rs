//! CSV ingestion and the bundled benchmark datasets.
//!
//! The three reference series ship embedded in the binary together with a
//! checksum manifest; loading verifies byte length and digest before any
//! parsing.

use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// The bundled reference series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchmarkName {
    /// Annual sunspot numbers, 1700-1987.
    Sunspots,
    /// Annual Canadian lynx trappings, 1821-1934.
    Lynx,
    /// Monthly international airline passengers, 1949-1960.
    Passengers,
}

impl BenchmarkName {
    pub const ALL: [BenchmarkName; 3] = [
        BenchmarkName::Sunspots,
        BenchmarkName::Lynx,
        BenchmarkName::Passengers,
    ];

    pub fn token(&self) -> &'static str {
        match self {
            BenchmarkName::Sunspots => "sunspots",
            BenchmarkName::Lynx => "lynx",
            BenchmarkName::Passengers => "passengers",
        }
    }
}

impl std::str::FromStr for BenchmarkName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BenchmarkName::ALL
            .iter()
            .find(|b| b.token() == s)
            .copied()
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown benchmark {s:?}; expected sunspots, lynx, or passengers"
                ))
            })
    }
}

/// Expected shape of a dataset.
#[derive(Debug, Clone)]
pub struct DatasetDescriptor {
    pub name: String,
    pub expected_length: usize,
    pub period: Option<usize>,
    pub source_path: String,
}

/// Descriptor for a bundled dataset.
pub fn descriptor(name: BenchmarkName) -> DatasetDescriptor {
    let (expected_length, period) = match name {
        BenchmarkName::Sunspots => (288, None),
        BenchmarkName::Lynx => (114, None),
        BenchmarkName::Passengers => (144, Some(12)),
    };
    DatasetDescriptor {
        name: name.token().into(),
        expected_length,
        period,
        source_path: format!("data/{}.csv", name.token()),
    }
}

const SUNSPOTS_CSV: &str = include_str!("../data/sunspots.csv");
const LYNX_CSV: &str = include_str!("../data/lynx.csv");
const PASSENGERS_CSV: &str = include_str!("../data/passengers.csv");
const MANIFEST: &str = include_str!("../data/manifest.txt");

fn bundled_csv(name: BenchmarkName) -> &'static str {
    match name {
        BenchmarkName::Sunspots => SUNSPOTS_CSV,
        BenchmarkName::Lynx => LYNX_CSV,
        BenchmarkName::Passengers => PASSENGERS_CSV,
    }
}

/// Manifest line: `<file> <bytes> sha256:<digest>`.
fn manifest_entry(file: &str) -> Result<(usize, String)> {
    for line in MANIFEST.lines() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() == 3 && fields[0] == file {
            let bytes = fields[1]
                .parse()
                .map_err(|e| Error::CorruptDataset(format!("manifest bytes for {file}: {e}")))?;
            let digest = fields[2]
                .strip_prefix("sha256:")
                .ok_or_else(|| Error::CorruptDataset(format!("manifest digest for {file}")))?;
            return Ok((bytes, digest.to_string()));
        }
    }
    Err(Error::CorruptDataset(format!("{file} missing from manifest")))
}

fn sha256_hex(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn parse_value_csv(text: &str, value_column: &str, source: &str) -> Result<Vec<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::ParseError {
            line: 1,
            message: format!("{source}: {e}"),
        })?
        .clone();
    let col = headers
        .iter()
        .position(|h| h == value_column)
        .ok_or_else(|| Error::MissingColumn(value_column.to_string()))?;
    let mut values = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2; // header is line 1
        let record = record.map_err(|e| Error::ParseError {
            line,
            message: format!("{source}: {e}"),
        })?;
        let raw = record.get(col).ok_or_else(|| Error::ParseError {
            line,
            message: format!("{source}: row has no field {value_column:?}"),
        })?;
        let value: f64 = raw.trim().parse().map_err(|_| Error::ParseError {
            line,
            message: format!("{source}: cannot parse {raw:?} as a number"),
        })?;
        values.push(value);
    }
    if values.len() < 2 {
        return Err(Error::TooShort(format!(
            "{source}: need at least 2 rows, got {}",
            values.len()
        )));
    }
    Ok(values)
}

/// Loads a series from a CSV file with a named value column.
pub fn load_series_csv(path: &Path, value_column: &str, period: Option<usize>) -> Result<TimeSeries> {
    let text = std::fs::read_to_string(path)?;
    let source = path.display().to_string();
    let values = parse_value_csv(&text, value_column, &source)?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| source.clone());
    TimeSeries::new(values, period, label)
}

/// Loads a bundled benchmark series, verifying manifest digest, byte
/// length, series length, and period metadata.
pub fn load_benchmark(name: BenchmarkName) -> Result<TimeSeries> {
    let desc = descriptor(name);
    let text = bundled_csv(name);
    let file = format!("{}.csv", name.token());
    let (bytes, digest) = manifest_entry(&file)?;
    if text.len() != bytes {
        return Err(Error::CorruptDataset(format!(
            "{file}: {} bytes, manifest says {bytes}",
            text.len()
        )));
    }
    let actual = sha256_hex(text);
    if actual != digest {
        return Err(Error::CorruptDataset(format!(
            "{file}: digest {actual} does not match manifest"
        )));
    }
    let values = parse_value_csv(text, "value", &desc.source_path)?;
    if values.len() != desc.expected_length {
        return Err(Error::CorruptDataset(format!(
            "{file}: {} observations, descriptor says {}",
            values.len(),
            desc.expected_length
        )));
    }
    TimeSeries::new(values, desc.period, desc.name)
}
