//! Per-run times and the official benchmark score: drop the fastest and
//! slowest run, report the arithmetic mean of the rest.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mllog::RunLog;

pub const MS_PER_MINUTE: f64 = 60_000.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Success,
    Aborted,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunTime {
    pub minutes: f64,
    pub status: RunStatus,
}

/// Wall-clock run time from run_start to run_stop. Staging is included
/// by construction since run_start precedes it.
pub fn run_time(run: &RunLog) -> Result<RunTime> {
    let stop = run.run_stop().ok_or(Error::MissingRunStop)?;
    let start = run.run_start();
    let status = match run.status() {
        "aborted" => RunStatus::Aborted,
        _ => RunStatus::Success,
    };
    Ok(RunTime {
        minutes: (stop.time_ms - start.time_ms) as f64 / MS_PER_MINUTE,
        status,
    })
}

/// Official score over successful run times (minutes): sort, drop one
/// minimum instance and one maximum instance, mean the remainder.
///
/// More than `required_runs` times may be supplied; all are used and
/// exactly two are still dropped.
pub fn official_score(times: &[f64], required_runs: usize) -> Result<f64> {
    if times.len() < required_runs || times.len() < 3 {
        return Err(Error::InsufficientRuns {
            have: times.len(),
            need: required_runs.max(3),
        });
    }
    let mut sorted = times.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("run times are finite"));
    let kept = &sorted[1..sorted.len() - 1];
    Ok(kept.iter().sum::<f64>() / kept.len() as f64)
}
