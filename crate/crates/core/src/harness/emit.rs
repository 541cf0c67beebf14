use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::Format;
use super::record::TrialRecord;
use super::HarnessError;

/// One CSV line; the column order is fixed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub config_hash: String,
    pub seed: u64,
    pub algorithm: String,
    pub n: u64,
    pub m: u64,
    pub d_avg: f64,
    pub iterations: u32,
    pub rounds: u64,
    pub max_residual_degree_final: u32,
    pub checks_failed: u32,
}

impl From<&TrialRecord> for CsvRow {
    fn from(r: &TrialRecord) -> CsvRow {
        CsvRow {
            config_hash: r.config_hash.clone(),
            seed: r.seed,
            algorithm: r.algorithm.clone(),
            n: r.n,
            m: r.m,
            d_avg: r.d_avg,
            iterations: r.iterations,
            rounds: r.rounds,
            max_residual_degree_final: r.max_residual_degree_final,
            checks_failed: r.checks_failed,
        }
    }
}

pub fn write_csv<W: Write>(records: &[TrialRecord], out: W) -> Result<(), HarnessError> {
    if records.is_empty() {
        return Err(HarnessError::Empty);
    }
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(CsvRow::from(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(records: &[TrialRecord], out: W) -> Result<(), HarnessError> {
    if records.is_empty() {
        return Err(HarnessError::Empty);
    }
    let mut out = BufWriter::new(out);
    serde_json::to_writer_pretty(&mut out, records)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<CsvRow>, HarnessError> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<Result<Vec<CsvRow>, _>>()?)
}

pub fn read_json<R: Read>(input: R) -> Result<Vec<TrialRecord>, HarnessError> {
    Ok(serde_json::from_reader(input)?)
}

/// Writes `records` to `path` in `format`.
pub fn emit(records: &[TrialRecord], format: Format, path: &Path) -> Result<(), HarnessError> {
    if records.is_empty() {
        return Err(HarnessError::Empty);
    }
    let file = File::create(path)?;
    match format {
        Format::Csv => write_csv(records, file),
        Format::Json => write_json(records, file),
    }
}
