//! Rule checks for runs, entries and whole submission trees.
//!
//! All problems are reported as [`Finding`]s instead of errors; a tree
//! passes iff no error-severity finding exists. Finding codes are
//! stable strings: QUALITY_NOT_MET, STAGING_OUTSIDE_RUN, MISSING_KEY,
//! INSUFFICIENT_RUNS, DISALLOWED_HPARAM, NO_ENTRIES,
//! NON_CONTIGUOUS_EPOCHS, NO_STAGING (warning), ORPHAN_SYSTEM (warning).

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::mllog::{pair_intervals, EventType, RunLog, Scalar};
use crate::scoring::RunStatus;
use crate::submission::{BenchmarkName, BenchmarkSpec, Division, SubmissionEntry, SubmissionTree};

pub mod codes {
    pub const QUALITY_NOT_MET: &str = "QUALITY_NOT_MET";
    pub const STAGING_OUTSIDE_RUN: &str = "STAGING_OUTSIDE_RUN";
    pub const MISSING_KEY: &str = "MISSING_KEY";
    pub const INSUFFICIENT_RUNS: &str = "INSUFFICIENT_RUNS";
    pub const DISALLOWED_HPARAM: &str = "DISALLOWED_HPARAM";
    pub const NO_ENTRIES: &str = "NO_ENTRIES";
    pub const NON_CONTIGUOUS_EPOCHS: &str = "NON_CONTIGUOUS_EPOCHS";
    pub const NO_STAGING: &str = "NO_STAGING";
    pub const ORPHAN_SYSTEM: &str = "ORPHAN_SYSTEM";
    pub const OPEN_DEVIATIONS: &str = "OPEN_DEVIATIONS";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub severity: Severity,
    pub code: String,
    pub message: String,
    pub file: Option<PathBuf>,
    pub line: Option<usize>,
}

impl Finding {
    fn new(severity: Severity, code: &str, message: String, file: Option<PathBuf>) -> Finding {
        Finding {
            severity,
            code: code.to_string(),
            message,
            file,
            line: None,
        }
    }

    pub fn error(code: &str, message: String, file: Option<PathBuf>) -> Finding {
        Finding::new(Severity::Error, code, message, file)
    }

    pub fn warning(code: &str, message: String, file: Option<PathBuf>) -> Finding {
        Finding::new(Severity::Warning, code, message, file)
    }

    pub fn info(code: &str, message: String, file: Option<PathBuf>) -> Finding {
        Finding::new(Severity::Info, code, message, file)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplianceReport {
    pub passed: bool,
    pub findings: Vec<Finding>,
}

impl ComplianceReport {
    pub fn from_findings(mut findings: Vec<Finding>) -> ComplianceReport {
        findings.sort_by(|a, b| {
            (&a.file, a.line, &a.code, &a.message).cmp(&(&b.file, b.line, &b.code, &b.message))
        });
        let passed = !findings.iter().any(|f| f.severity == Severity::Error);
        ComplianceReport { passed, findings }
    }
}

const REQUIRED_POINT_KEYS: [&str; 4] = [
    "submission_benchmark",
    "submission_division",
    "global_batch_size",
    "num_compute_units",
];

/// Checks a single run against the benchmark rules. The division has no
/// per-run rules today (hyperparameter restrictions are entry-level)
/// but stays in the signature as part of the contract.
pub fn check_run(run: &RunLog, spec: &BenchmarkSpec, _division: Division) -> Vec<Finding> {
    let mut findings = Vec::new();
    let file = Some(run.source.clone());

    for key in REQUIRED_POINT_KEYS {
        if run.point(key).is_none() {
            findings.push(Finding::error(
                codes::MISSING_KEY,
                format!("required POINT_IN_TIME key {key} is missing"),
                file.clone(),
            ));
        }
    }

    // quality: successful runs must beat the target, strictly
    if run.status() == "success" && run.run_stop().is_some() {
        let best = run
            .events
            .iter()
            .filter(|e| e.key == spec.quality_key)
            .filter_map(|e| e.value.as_f64())
            .any(|v| spec.meets_target(v));
        if !best {
            findings.push(Finding::error(
                codes::QUALITY_NOT_MET,
                format!(
                    "run_stop reports success but no {} event meets the target {}",
                    spec.quality_key, spec.quality_target
                ),
                file.clone(),
            ));
        }
    }

    // staging must be fully inside the timed region
    match pair_intervals(run, "staging") {
        Ok(stagings) if stagings.is_empty() => {
            findings.push(Finding::warning(
                codes::NO_STAGING,
                "no staging interval (system without node-local storage?)".to_string(),
                file.clone(),
            ));
        }
        Ok(stagings) => {
            let start = run.run_start().time_ms;
            let stop = run.run_stop().map(|e| e.time_ms).unwrap_or(i64::MAX);
            for s in stagings {
                if s.start_ms < start || s.end_ms > stop {
                    findings.push(Finding::error(
                        codes::STAGING_OUTSIDE_RUN,
                        format!(
                            "staging interval [{}, {}] not inside [run_start, run_stop]",
                            s.start_ms, s.end_ms
                        ),
                        file.clone(),
                    ));
                }
            }
        }
        Err(e) => findings.push(Finding::error(
            codes::STAGING_OUTSIDE_RUN,
            format!("staging intervals unusable: {e}"),
            file.clone(),
        )),
    }

    // epoch numbers must run 1, 2, ... without gaps
    match pair_intervals(run, "epoch") {
        Ok(epochs) => {
            let nums: Vec<Option<i64>> = epochs
                .iter()
                .map(|i| i.metadata.get("epoch_num").and_then(Scalar::as_i64))
                .collect();
            let contiguous = nums
                .iter()
                .enumerate()
                .all(|(i, n)| *n == Some(i as i64 + 1));
            if !contiguous && !epochs.is_empty() {
                findings.push(Finding::error(
                    codes::NON_CONTIGUOUS_EPOCHS,
                    format!("epoch_num values {nums:?} are not contiguous from 1"),
                    file.clone(),
                ));
            }
        }
        Err(e) => findings.push(Finding::error(
            codes::NON_CONTIGUOUS_EPOCHS,
            format!("epoch intervals unusable: {e}"),
            file.clone(),
        )),
    }

    findings
}

/// Hyperparameters are POINT_IN_TIME events carrying the metadata flag
/// `tunable: true`; unflagged keys are informational.
fn tuned_hparams(run: &RunLog) -> Vec<(&str, &Scalar)> {
    run.events
        .iter()
        .filter(|e| e.event_type == EventType::PointInTime)
        .filter(|e| e.metadata.get("tunable") == Some(&Scalar::Bool(true)))
        .map(|e| (e.key.as_str(), &e.value))
        .collect()
}

fn closed_division_allowed(benchmark: BenchmarkName, key: &str, value: &Scalar) -> bool {
    match key {
        "global_batch_size" => true,
        k if k.starts_with("learning_rate") => true,
        "optimizer" if benchmark == BenchmarkName::Deepcam => {
            matches!(value.as_str(), Some("LAMB") | Some("AdamW"))
        }
        _ => false,
    }
}

/// Entry-level checks: run count and division hyperparameter rules.
pub fn check_entry(entry: &SubmissionEntry) -> Vec<Finding> {
    let mut findings = Vec::new();

    let successes = entry
        .runs
        .iter()
        .filter(|r| crate::scoring::run_time(r).map_or(false, |t| t.status == RunStatus::Success))
        .count();
    if successes < entry.benchmark.required_runs {
        findings.push(Finding::error(
            codes::INSUFFICIENT_RUNS,
            format!(
                "{}: {successes} successful runs, {} required",
                entry.label(),
                entry.benchmark.required_runs
            ),
            None,
        ));
    }

    let mut deviations = Vec::new();
    for run in &entry.runs {
        for (key, value) in tuned_hparams(run) {
            match entry.division {
                Division::Closed => {
                    if !closed_division_allowed(entry.benchmark.name, key, value) {
                        findings.push(Finding::error(
                            codes::DISALLOWED_HPARAM,
                            format!(
                                "closed division does not allow tuning {key} for {}",
                                entry.benchmark.name
                            ),
                            Some(run.source.clone()),
                        ));
                    }
                }
                Division::Open => {
                    if !deviations.contains(&key.to_string()) {
                        deviations.push(key.to_string());
                    }
                }
            }
        }
    }
    if entry.division == Division::Open && !deviations.is_empty() {
        findings.push(Finding::info(
            codes::OPEN_DEVIATIONS,
            format!("{}: tuned hyperparameters: {}", entry.label(), deviations.join(", ")),
            None,
        ));
    }

    findings
}

/// Full tree check: per-entry and per-run findings plus tree-level ones.
pub fn check_tree(tree: &SubmissionTree) -> ComplianceReport {
    let mut findings = Vec::new();
    if tree.entries.is_empty() {
        findings.push(Finding::error(
            codes::NO_ENTRIES,
            format!("no submission entries under {}", tree.root.display()),
            None,
        ));
    }
    for entry in &tree.entries {
        findings.extend(check_entry(entry));
        for run in &entry.runs {
            findings.extend(check_run(run, &entry.benchmark, entry.division));
        }
    }
    for orphan in &tree.orphan_systems {
        findings.push(Finding::warning(
            codes::ORPHAN_SYSTEM,
            format!("system {orphan} has a description but no results"),
            None,
        ));
    }
    ComplianceReport::from_findings(findings)
}
