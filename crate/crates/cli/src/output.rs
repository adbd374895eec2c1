use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use rankexact_core::arith::decimal;
use rankexact_core::{BigComplex, PrecisionConfig, SummationMode};
use serde::Serialize;
use serde_json::{json, Value};

/// Everything needed to reproduce a run.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub params: Value,
    pub precision_bits: u32,
    pub summation: SummationMode,
    pub threads: Option<usize>,
    pub seed: u64,
    pub version: &'static str,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl RunManifest {
    pub fn new(command: &str, params: Value, cfg: &PrecisionConfig, threads: Option<usize>, seed: u64) -> Self {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        Self {
            command: command.to_string(),
            params,
            precision_bits: cfg.working_bits,
            summation: cfg.summation,
            threads,
            seed,
            version: env!("CARGO_PKG_VERSION"),
            timestamp,
        }
    }
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// Result of one subcommand; `pass` is `None` for pure evaluations.
pub struct Outcome {
    pub result: Value,
    pub table: Table,
    pub pass: Option<bool>,
}

pub fn complex_json(z: &BigComplex) -> Value {
    json!({ "re": decimal(z.real()), "im": decimal(z.imag()) })
}

pub fn write_json(out: &mut dyn Write, manifest: &RunManifest, outcome: &Outcome) -> std::io::Result<()> {
    let doc = json!({ "manifest": manifest, "result": outcome.result });
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    writeln!(out)
}

/// Manifest as a leading comment line, then the table.
pub fn write_csv(out: &mut dyn Write, manifest: &RunManifest, outcome: &Outcome) -> std::io::Result<()> {
    writeln!(out, "# {}", serde_json::to_string(manifest)?)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&outcome.table.header)?;
    for row in &outcome.table.rows {
        w.write_record(row)?;
    }
    w.flush()
}
