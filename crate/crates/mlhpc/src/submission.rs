//! Submission directory trees and the built-in benchmark constants.
//!
//! Layout: `<org>/systems/<system>.json` and
//! `<org>/results/<system>/<benchmark>/result_<k>.txt`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mllog::{self, RunLog};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchmarkName {
    Cosmoflow,
    Deepcam,
}

impl BenchmarkName {
    pub fn as_str(&self) -> &'static str {
        match self {
            BenchmarkName::Cosmoflow => "cosmoflow",
            BenchmarkName::Deepcam => "deepcam",
        }
    }

    pub fn parse(s: &str) -> Option<BenchmarkName> {
        match s {
            "cosmoflow" => Some(BenchmarkName::Cosmoflow),
            "deepcam" => Some(BenchmarkName::Deepcam),
            _ => None,
        }
    }
}

impl fmt::Display for BenchmarkName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Division {
    Closed,
    Open,
}

impl Division {
    pub fn as_str(&self) -> &'static str {
        match self {
            Division::Closed => "closed",
            Division::Open => "open",
        }
    }

    pub fn parse(s: &str) -> Option<Division> {
        match s {
            "closed" => Some(Division::Closed),
            "open" => Some(Division::Open),
            _ => None,
        }
    }
}

impl fmt::Display for Division {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Whether lower or higher quality-metric values are better.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QualityDirection {
    Minimize,
    Maximize,
}

/// Per-benchmark constants: quality rule, run count and dataset sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkSpec {
    pub name: BenchmarkName,
    pub quality_key: String,
    pub quality_direction: QualityDirection,
    pub quality_target: f64,
    pub required_runs: usize,
    pub n_train_samples: u64,
    pub n_eval_samples: u64,
    pub dataset_size_gb: f64,
    pub train_dataset_size_gb: f64,
}

impl BenchmarkSpec {
    /// True when `value` strictly beats the quality target.
    pub fn meets_target(&self, value: f64) -> bool {
        match self.quality_direction {
            QualityDirection::Minimize => value < self.quality_target,
            QualityDirection::Maximize => value > self.quality_target,
        }
    }
}

/// The two built-in benchmarks with their published constants.
pub fn builtin_benchmarks() -> Vec<BenchmarkSpec> {
    vec![
        BenchmarkSpec {
            name: BenchmarkName::Cosmoflow,
            quality_key: "eval_accuracy".to_string(),
            quality_direction: QualityDirection::Minimize,
            quality_target: 0.124,
            required_runs: 10,
            n_train_samples: 262_144,
            n_eval_samples: 65_536,
            dataset_size_gb: 5100.0,
            // 80/20 train/eval split of the 5.1 TB dataset
            train_dataset_size_gb: 4080.0,
        },
        BenchmarkSpec {
            name: BenchmarkName::Deepcam,
            quality_key: "eval_accuracy".to_string(),
            quality_direction: QualityDirection::Maximize,
            quality_target: 0.82,
            required_runs: 5,
            n_train_samples: 121_266,
            n_eval_samples: 15_158,
            dataset_size_gb: 8800.0,
            train_dataset_size_gb: 7700.0,
        },
    ]
}

pub fn benchmark_by_name(name: BenchmarkName) -> BenchmarkSpec {
    builtin_benchmarks()
        .into_iter()
        .find(|b| b.name == name)
        .expect("both benchmarks are built in")
}

/// System description as stored in `<org>/systems/<system>.json`.
/// Unknown fields are preserved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemDescription {
    pub system_name: String,
    pub n_nodes: u64,
    #[serde(default)]
    pub processors_per_node: u64,
    #[serde(default)]
    pub accelerators_per_node: u64,
    #[serde(default)]
    pub memory_per_node_gb: f64,
    #[serde(default)]
    pub notes: String,
    #[serde(flatten)]
    pub extra: BTreeMap<String, serde_json::Value>,
}

/// One submission entry: a set of runs for one (org, system, benchmark,
/// division) combination.
#[derive(Debug, Clone)]
pub struct SubmissionEntry {
    pub org: String,
    pub system: SystemDescription,
    pub benchmark: BenchmarkSpec,
    pub division: Division,
    pub runs: Vec<RunLog>,
    pub n_compute_units: u64,
    pub global_batch_size: u64,
}

impl SubmissionEntry {
    pub fn label(&self) -> String {
        format!(
            "{}/{}/{}/{}",
            self.org,
            self.system.system_name,
            self.benchmark.name,
            self.division
        )
    }
}

#[derive(Debug, Clone)]
pub struct SubmissionTree {
    pub root: PathBuf,
    pub entries: Vec<SubmissionEntry>,
    /// Systems described under `systems/` that no result directory uses.
    pub orphan_systems: Vec<String>,
}

fn load_system_file(path: &Path) -> Result<SystemDescription> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_reader(BufReader::new(file)).map_err(|e| Error::Json {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })
}

fn sorted_dir_entries(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        out.push(entry.map_err(|e| Error::io(dir, e))?.path());
    }
    out.sort();
    Ok(out)
}

/// Division hint carried by a trailing `_open` / `_closed` directory
/// suffix, if any.
fn division_suffix(name: &str) -> Option<Division> {
    if name.ends_with("_open") {
        Some(Division::Open)
    } else if name.ends_with("_closed") {
        Some(Division::Closed)
    } else {
        None
    }
}

/// Walks a submission tree and groups result files into entries keyed
/// by (system, benchmark, division). The division recorded in the logs
/// wins over any directory suffix, with a warning on conflict.
pub fn load_submission(root: impl AsRef<Path>) -> Result<SubmissionTree> {
    let root = root.as_ref();
    let mut entries = Vec::new();
    let mut orphan_systems = Vec::new();

    for org_dir in sorted_dir_entries(root)?.into_iter().filter(|p| p.is_dir()) {
        let org = org_dir.file_name().unwrap().to_string_lossy().to_string();
        let mut systems: BTreeMap<String, SystemDescription> = BTreeMap::new();
        let systems_dir = org_dir.join("systems");
        if systems_dir.is_dir() {
            for path in sorted_dir_entries(&systems_dir)? {
                if path.extension().map_or(false, |e| e == "json") {
                    let name = path.file_stem().unwrap().to_string_lossy().to_string();
                    systems.insert(name, load_system_file(&path)?);
                }
            }
        }
        let mut used: BTreeSet<String> = BTreeSet::new();

        let results_dir = org_dir.join("results");
        if results_dir.is_dir() {
            for sys_dir in sorted_dir_entries(&results_dir)?.into_iter().filter(|p| p.is_dir()) {
                let sys_name = sys_dir.file_name().unwrap().to_string_lossy().to_string();
                let system = systems
                    .get(&sys_name)
                    .cloned()
                    .ok_or_else(|| Error::MissingSystemFile {
                        system: sys_name.clone(),
                    })?;
                used.insert(sys_name.clone());
                for bench_dir in sorted_dir_entries(&sys_dir)?.into_iter().filter(|p| p.is_dir()) {
                    let bench_name = bench_dir.file_name().unwrap().to_string_lossy().to_string();
                    let Some(benchmark) = BenchmarkName::parse(&bench_name) else {
                        log::warn!("skipping unknown benchmark directory {}", bench_dir.display());
                        continue;
                    };
                    let runs = load_result_dir(&bench_dir)?;
                    if runs.is_empty() {
                        return Err(Error::EmptyEntry { dir: bench_dir });
                    }
                    group_runs_into_entries(
                        &mut entries,
                        &org,
                        &system,
                        &sys_name,
                        benchmark,
                        runs,
                    );
                }
            }
        }

        for name in systems.keys() {
            if !used.contains(name) {
                orphan_systems.push(format!("{org}/{name}"));
            }
        }
    }

    Ok(SubmissionTree {
        root: root.to_path_buf(),
        entries,
        orphan_systems,
    })
}

fn load_result_dir(dir: &Path) -> Result<Vec<RunLog>> {
    let mut runs = Vec::new();
    for path in sorted_dir_entries(dir)? {
        let fname = path.file_name().unwrap().to_string_lossy();
        if fname.starts_with("result_") && fname.ends_with(".txt") {
            let file = File::open(&path).map_err(|e| Error::io(&path, e))?;
            let run = mllog::parse_run_log(BufReader::new(file), &path)
                .map_err(|e| e.in_file(&path))?;
            runs.push(run);
        } else {
            // real trees carry READMEs and metadata files
            log::warn!("ignoring unexpected file {}", path.display());
        }
    }
    Ok(runs)
}

fn group_runs_into_entries(
    entries: &mut Vec<SubmissionEntry>,
    org: &str,
    system: &SystemDescription,
    sys_dir_name: &str,
    benchmark: BenchmarkName,
    runs: Vec<RunLog>,
) {
    let suffix = division_suffix(sys_dir_name);
    let mut by_division: BTreeMap<Division, Vec<RunLog>> = BTreeMap::new();
    for run in runs {
        let division = match run.point_str("submission_division").and_then(Division::parse) {
            Some(d) => {
                if let Some(s) = suffix {
                    if s != d {
                        log::warn!(
                            "{}: log division {d} conflicts with directory suffix {s}; log wins",
                            run.source.display()
                        );
                    }
                }
                d
            }
            None => {
                let fallback = suffix.unwrap_or(Division::Closed);
                log::warn!(
                    "{}: no submission_division event, assuming {fallback}",
                    run.source.display()
                );
                fallback
            }
        };
        by_division.entry(division).or_default().push(run);
    }
    for (division, runs) in by_division {
        let n_compute_units = runs
            .iter()
            .find_map(|r| r.point_i64("num_compute_units"))
            .unwrap_or(0) as u64;
        let global_batch_size = runs
            .iter()
            .find_map(|r| r.point_i64("global_batch_size"))
            .unwrap_or(0) as u64;
        entries.push(SubmissionEntry {
            org: org.to_string(),
            system: system.clone(),
            benchmark: benchmark_by_name(benchmark),
            division,
            runs,
            n_compute_units,
            global_batch_size,
        });
    }
}
