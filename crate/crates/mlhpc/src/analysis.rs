//! Entry-level analysis reports: per-run decompositions aggregated
//! into means, breakdown fractions, a scaling point and the compute
//! budget. This is the data behind the analyze workflow; the CLI only
//! adds file I/O around it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perfmodel::{self, RunDecomposition, ScalingPoint};
use crate::scoring::{self, RunStatus};
use crate::stats;
use crate::submission::{BenchmarkName, Division, SubmissionEntry, SubmissionTree};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
}

fn mean_std_of(xs: &[f64]) -> Result<MeanStd> {
    let (mean, std) = stats::mean_std(xs)?;
    Ok(MeanStd { mean, std })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryAnalysis {
    pub schema_version: u32,
    pub org: String,
    pub system: String,
    pub benchmark: BenchmarkName,
    pub division: Division,
    pub n_units: u64,
    pub batch: u64,
    /// Successful runs only, in result-file order.
    pub runs: Vec<RunDecomposition>,
    pub staging_min: MeanStd,
    pub train_min: MeanStd,
    pub eval_min: MeanStd,
    pub extra_min: MeanStd,
    pub total_min: MeanStd,
    pub epochs: MeanStd,
    /// Mean of per-run [staging, train, eval, extra] fractions.
    pub relative_breakdown: [f64; 4],
    /// Mean staging time over mean full-pass epoch time.
    pub staging_epoch_ratio: f64,
    pub scaling_point: ScalingPoint,
    /// Official score; absent when fewer than required runs succeeded.
    pub score_min: Option<f64>,
    /// score / 60 * n_units, in hour-units.
    pub budget_unit_hours: Option<f64>,
    /// Per-run (epochs, epoch throughput) pairs feeding the log-PCA.
    pub run_points: Vec<(f64, f64)>,
}

impl EntryAnalysis {
    pub fn label(&self) -> String {
        format!("{}/{}/{}/{}", self.org, self.system, self.benchmark, self.division)
    }

    /// Mean full-pass epoch time in minutes.
    pub fn epoch_time_min(&self) -> f64 {
        (self.train_min.mean + self.eval_min.mean) / self.epochs.mean
    }
}

/// Analyzes one entry over its successful runs. Aborted runs and runs
/// without run_stop are skipped with a warning; at least one success is
/// required.
pub fn analyze_entry(entry: &SubmissionEntry) -> Result<EntryAnalysis> {
    let mut runs = Vec::new();
    for run in &entry.runs {
        match scoring::run_time(run) {
            Ok(t) if t.status == RunStatus::Success => {
                runs.push(perfmodel::decompose(run, &entry.benchmark).map_err(|e| e.in_file(&run.source))?)
            }
            Ok(_) => log::warn!("{}: skipping aborted run", run.source.display()),
            Err(_) => log::warn!("{}: skipping run without run_stop", run.source.display()),
        }
    }
    if runs.is_empty() {
        return Err(Error::EmptyInput);
    }

    let col = |f: fn(&RunDecomposition) -> f64| -> Vec<f64> { runs.iter().map(f).collect() };
    let staging_min = mean_std_of(&col(|d| d.t_staging_min))?;
    let train_min = mean_std_of(&col(|d| d.t_train_min))?;
    let eval_min = mean_std_of(&col(|d| d.t_eval_min))?;
    let extra_min = mean_std_of(&col(|d| d.t_extra_min))?;
    let total_min = mean_std_of(&col(|d| d.t_total_min))?;
    let epochs = mean_std_of(&col(|d| d.epochs_completed))?;

    let mut breakdown = [0.0; 4];
    for d in &runs {
        let f = perfmodel::relative_breakdown(d);
        for i in 0..4 {
            breakdown[i] += f[i] / runs.len() as f64;
        }
    }

    let n_units = entry.n_compute_units.max(1);
    let spec = &entry.benchmark;
    let mut run_points = Vec::new();
    let mut train_tps = Vec::new();
    let mut eval_tps = Vec::new();
    for d in &runs {
        let train_s = d.t_train_min * 60.0;
        let eval_s = d.t_eval_min * 60.0;
        let train_tp = d.epochs_completed * spec.n_train_samples as f64 / train_s;
        let eval_tp = d.n_eval_passes as f64 * spec.n_eval_samples as f64 / eval_s;
        let epoch_tp = d.epochs_completed / (train_s + eval_s);
        train_tps.push(train_tp / n_units as f64);
        eval_tps.push(eval_tp / n_units as f64);
        run_points.push((d.epochs_completed, epoch_tp));
    }
    let epoch_time_min = (train_min.mean + eval_min.mean) / epochs.mean;
    let scaling_point = ScalingPoint {
        n_units,
        batch: entry.global_batch_size,
        epochs_mean: epochs.mean,
        epochs_std: epochs.std,
        train_tp_per_unit: train_tps.iter().sum::<f64>() / train_tps.len() as f64,
        eval_tp_per_unit: eval_tps.iter().sum::<f64>() / eval_tps.len() as f64,
        epoch_tp: run_points.iter().map(|p| p.1).sum::<f64>() / runs.len() as f64,
        label: entry.label(),
    };

    let times: Vec<f64> = runs.iter().map(|d| d.t_total_min).collect();
    let score_min = scoring::official_score(&times, spec.required_runs).ok();
    let budget_unit_hours = score_min.map(|s| perfmodel::compute_budget(s, n_units));

    Ok(EntryAnalysis {
        schema_version: 1,
        org: entry.org.clone(),
        system: entry.system.system_name.clone(),
        benchmark: spec.name,
        division: entry.division,
        n_units,
        batch: entry.global_batch_size,
        runs,
        staging_min,
        train_min,
        eval_min,
        extra_min,
        total_min,
        epochs,
        relative_breakdown: breakdown,
        staging_epoch_ratio: perfmodel::staging_epoch_ratio(staging_min.mean, epoch_time_min),
        scaling_point,
        score_min,
        budget_unit_hours,
        run_points,
    })
}

/// Analyzes every entry of a tree, in tree order.
pub fn analyze_tree(tree: &SubmissionTree) -> Result<Vec<EntryAnalysis>> {
    tree.entries.iter().map(analyze_entry).collect()
}

/// Per-run (epochs, epoch throughput) points pooled over entries of
/// one benchmark: the input cloud of the log-PCA.
pub fn pca_points(analyses: &[EntryAnalysis], benchmark: BenchmarkName) -> Vec<(f64, f64)> {
    analyses
        .iter()
        .filter(|a| a.benchmark == benchmark)
        .flat_map(|a| a.run_points.iter().copied())
        .collect()
}

/// Mean full-pass epoch seconds per (benchmark, system), for joining
/// bandwidth records against a tree.
pub fn epoch_seconds_by_system(
    analyses: &[EntryAnalysis],
) -> BTreeMap<(BenchmarkName, String), f64> {
    let mut out = BTreeMap::new();
    for a in analyses {
        out.insert((a.benchmark, a.system.clone()), a.epoch_time_min() * 60.0);
    }
    out
}
