//! Bandwidth-measurement records and I/O-hiding estimates.
//!
//! Input CSV header (exact):
//! `benchmark,system,memory_bw_gbs,network_bw_gbs,network_units,message_size_mb,io_bw_gbs,memory_tool,network_tool,io_tool`

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::submission::BenchmarkName;

pub const CSV_HEADER: [&str; 10] = [
    "benchmark",
    "system",
    "memory_bw_gbs",
    "network_bw_gbs",
    "network_units",
    "message_size_mb",
    "io_bw_gbs",
    "memory_tool",
    "network_tool",
    "io_tool",
];

/// One bandwidth measurement row: memory bandwidth of a single compute
/// unit, collective-network bandwidth at some unit count, and
/// per-worker I/O bandwidth, each with the tool that measured it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandwidthRecord {
    pub benchmark: BenchmarkName,
    pub system: String,
    pub memory_bw_gbs: Option<f64>,
    pub network_bw_gbs: Option<f64>,
    pub network_units: Option<u64>,
    pub message_size_mb: Option<f64>,
    pub io_bw_gbs: Option<f64>,
    /// phase ("memory" | "network" | "io") -> tool name
    pub tools: BTreeMap<String, String>,
}

fn parse_opt<T: std::str::FromStr>(cell: &str, row: usize, what: &str) -> Result<Option<T>> {
    let cell = cell.trim();
    if cell.is_empty() {
        return Ok(None);
    }
    cell.parse::<T>().map(Some).map_err(|_| Error::MalformedRow {
        row,
        reason: format!("{what}: cannot parse {cell:?}"),
    })
}

fn parse_bw(cell: &str, row: usize, what: &str) -> Result<Option<f64>> {
    let v: Option<f64> = parse_opt(cell, row, what)?;
    if let Some(v) = v {
        if v <= 0.0 {
            return Err(Error::MalformedRow {
                row,
                reason: format!("{what}: bandwidth must be positive, got {v}"),
            });
        }
    }
    Ok(v)
}

/// Loads records from a CSV file; row numbers in errors count the
/// header as row 1.
pub fn load_records(path: impl AsRef<Path>) -> Result<Vec<BandwidthRecord>> {
    let path = path.as_ref();
    let mut reader = csv::Reader::from_path(path).map_err(|e| Error::Json {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })?;
    let headers = reader
        .headers()
        .map_err(|e| Error::MalformedRow { row: 1, reason: e.to_string() })?
        .clone();
    let expected: Vec<&str> = CSV_HEADER.to_vec();
    let got: Vec<&str> = headers.iter().collect();
    if got != expected {
        return Err(Error::MalformedRow {
            row: 1,
            reason: format!("unexpected header {got:?}"),
        });
    }
    let mut out = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let row = i + 2;
        let rec = rec.map_err(|e| Error::MalformedRow { row, reason: e.to_string() })?;
        if rec.len() != CSV_HEADER.len() {
            return Err(Error::MalformedRow {
                row,
                reason: format!("expected {} cells, got {}", CSV_HEADER.len(), rec.len()),
            });
        }
        let benchmark = BenchmarkName::parse(rec[0].trim()).ok_or_else(|| Error::MalformedRow {
            row,
            reason: format!("unknown benchmark {:?}", &rec[0]),
        })?;
        let mut tools = BTreeMap::new();
        for (phase, idx) in [("memory", 7), ("network", 8), ("io", 9)] {
            let t = rec[idx].trim();
            if !t.is_empty() {
                tools.insert(phase.to_string(), t.to_string());
            }
        }
        out.push(BandwidthRecord {
            benchmark,
            system: rec[1].trim().to_string(),
            memory_bw_gbs: parse_bw(&rec[2], row, "memory_bw_gbs")?,
            network_bw_gbs: parse_bw(&rec[3], row, "network_bw_gbs")?,
            network_units: parse_opt(&rec[4], row, "network_units")?,
            message_size_mb: parse_opt(&rec[5], row, "message_size_mb")?,
            io_bw_gbs: parse_bw(&rec[6], row, "io_bw_gbs")?,
            tools,
        });
    }
    Ok(out)
}

/// Writes records back in the exact input schema; `load_records` of the
/// output round-trips.
pub fn emit_records(records: &[BandwidthRecord], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Json {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })?;
    w.write_record(CSV_HEADER)
        .map_err(|e| Error::Json { path: path.to_path_buf(), reason: e.to_string() })?;
    let fmt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in records {
        w.write_record([
            r.benchmark.as_str().to_string(),
            r.system.clone(),
            fmt(r.memory_bw_gbs),
            fmt(r.network_bw_gbs),
            r.network_units.map(|x| x.to_string()).unwrap_or_default(),
            fmt(r.message_size_mb),
            fmt(r.io_bw_gbs),
            r.tools.get("memory").cloned().unwrap_or_default(),
            r.tools.get("network").cloned().unwrap_or_default(),
            r.tools.get("io").cloned().unwrap_or_default(),
        ])
        .map_err(|e| Error::Json { path: path.to_path_buf(), reason: e.to_string() })?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// Estimated seconds a worker pool needs to read the training split
/// once: dataset / workers / per-worker bandwidth.
pub fn io_time_per_epoch(train_dataset_gb: f64, workers: u64, io_bw_gbs: f64) -> f64 {
    train_dataset_gb / workers as f64 / io_bw_gbs
}

/// I/O-to-compute ratio per epoch; I/O is hidden behind computation
/// when the ratio is strictly below 1.
pub fn io_hidden(io_time_s: f64, epoch_time_s: f64) -> (f64, bool) {
    let ratio = io_time_s / epoch_time_s;
    (ratio, ratio < 1.0)
}
