//! Command-line front end: validate / score / analyze / predict /
//! characterize / synth.
//!
//! Exit codes: 0 success, 1 domain failure (non-compliance, score or
//! prediction impossible), 2 environmental failure (I/O, parse, usage).
//! Log verbosity comes from the TOOL_LOG_LEVEL environment variable
//! (error, warn, info, debug; default warn).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::analysis::{self, EntryAnalysis};
use crate::characterization;
use crate::compliance::{self, Severity};
use crate::error::{Error, Result};
use crate::perfmodel::{self, EpochsCurve, ScalingPoint};
use crate::scoring::{self, RunStatus};
use crate::stats;
use crate::submission::{self, BenchmarkName, SubmissionTree};
use crate::svg;
use crate::synth::{self, SynthConfig};

pub const LOG_LEVEL_ENV: &str = "TOOL_LOG_LEVEL";

#[derive(Parser)]
#[command(name = "mlhpc", version, about = "Benchmark submission toolkit: validate, score and analyze structured training logs")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a submission tree against the benchmark rules
    Validate {
        root: PathBuf,
    },
    /// Compute official scores and write the score table CSV
    Score {
        root: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Score even when compliance fails, over the available
        /// successful runs
        #[arg(long)]
        force: bool,
    },
    /// Write per-entry reports, scaling panels, breakdown and PCA
    Analyze {
        root: PathBuf,
        #[arg(long)]
        outdir: PathBuf,
    },
    /// Predict time to solution at another global batch size
    Predict {
        /// Baseline entry JSON (scaling point + staging ratio)
        #[arg(long)]
        baseline: PathBuf,
        /// Epochs-to-converge curve CSV with columns batch,epochs
        #[arg(long)]
        curve: PathBuf,
        /// Target global batch size
        #[arg(long)]
        batch: u64,
    },
    /// Compute I/O-hiding estimates from bandwidth records
    Characterize {
        #[arg(long)]
        records: PathBuf,
        /// Submission tree supplying measured epoch times
        #[arg(long)]
        tree: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a synthetic submission tree with a ground-truth sidecar
    Synth {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        root: PathBuf,
    },
}

/// Maps an error to the exit-code contract: parse and I/O problems are
/// environmental (2), everything the inputs legitimately produce is a
/// domain failure (1).
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::MalformedEvent { .. }
        | Error::MissingRunStart
        | Error::NonMonotonicTime { .. }
        | Error::UnbalancedIntervals { .. }
        | Error::MissingSystemFile { .. }
        | Error::MalformedRow { .. }
        | Error::InvalidConfig(_)
        | Error::Io { .. }
        | Error::Json { .. } => 2,
        Error::InFile { source, .. } => exit_code_for(source),
        _ => 1,
    }
}

/// Parses argv and runs the selected command, returning the process
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::new().filter_or(LOG_LEVEL_ENV, "warn"))
        .try_init();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version as "errors" with exit 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Validate { root } => cmd_validate(&root),
        Command::Score { root, out, force } => cmd_score(&root, &out, force),
        Command::Analyze { root, outdir } => cmd_analyze(&root, &outdir),
        Command::Predict { baseline, curve, batch } => cmd_predict(&baseline, &curve, batch),
        Command::Characterize { records, tree, out } => {
            cmd_characterize(&records, tree.as_deref(), &out)
        }
        Command::Synth { config, root } => cmd_synth(&config, &root),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn write_atomic(path: &Path, content: &[u8]) -> Result<()> {
    let tmp = path.with_extension(match path.extension() {
        Some(e) => format!("{}.tmp", e.to_string_lossy()),
        None => "tmp".to_string(),
    });
    std::fs::write(&tmp, content).map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

fn print_findings(report: &compliance::ComplianceReport) {
    for f in &report.findings {
        let sev = match f.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Info => "info",
        };
        match &f.file {
            Some(p) => println!("{sev} {} {}: {}", f.code, p.display(), f.message),
            None => println!("{sev} {} {}", f.code, f.message),
        }
    }
}

fn cmd_validate(root: &Path) -> Result<i32> {
    let tree = submission::load_submission(root)?;
    let report = compliance::check_tree(&tree);
    print_findings(&report);
    if report.passed {
        println!("PASSED: {} entries checked", tree.entries.len());
        Ok(0)
    } else {
        let errors = report.findings.iter().filter(|f| f.severity == Severity::Error).count();
        println!("FAILED: {errors} errors");
        Ok(1)
    }
}

fn entry_score(entry: &submission::SubmissionEntry, force: bool) -> Result<(f64, usize)> {
    let times: Vec<f64> = entry
        .runs
        .iter()
        .filter_map(|r| scoring::run_time(r).ok())
        .filter(|t| t.status == RunStatus::Success)
        .map(|t| t.minutes)
        .collect();
    match scoring::official_score(&times, entry.benchmark.required_runs) {
        Ok(score) => Ok((score, times.len().saturating_sub(2))),
        Err(e) if force && !times.is_empty() => {
            log::warn!("{}: {e}; scoring over {} available successes", entry.label(), times.len());
            if times.len() >= 3 {
                Ok((scoring::official_score(&times, 3)?, times.len() - 2))
            } else {
                Ok((times.iter().sum::<f64>() / times.len() as f64, times.len()))
            }
        }
        Err(e) => Err(e),
    }
}

fn cmd_score(root: &Path, out: &Path, force: bool) -> Result<i32> {
    let tree = submission::load_submission(root)?;
    let report = compliance::check_tree(&tree);
    if !report.passed {
        print_findings(&report);
        if !force {
            eprintln!("tree is not compliant; rerun with --force to score anyway");
            return Ok(1);
        }
        log::warn!("scoring a non-compliant tree (--force)");
    }
    if tree.entries.is_empty() {
        return Ok(1);
    }
    let mut csv = String::from("org,system,benchmark,division,n_units,batch,score_minutes,n_runs_used\n");
    for entry in &tree.entries {
        let (score, used) = entry_score(entry, force)?;
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            entry.org,
            entry.system.system_name,
            entry.benchmark.name,
            entry.division,
            entry.n_compute_units,
            entry.global_batch_size,
            score,
            used
        ));
    }
    write_atomic(out, csv.as_bytes())?;
    println!("wrote {} ({} entries)", out.display(), tree.entries.len());
    Ok(0)
}

fn sanitize(s: &str) -> String {
    s.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect()
}

fn cmd_analyze(root: &Path, outdir: &Path) -> Result<i32> {
    let tree = submission::load_submission(root)?;
    if tree.entries.is_empty() {
        eprintln!("no entries to analyze under {}", root.display());
        return Ok(1);
    }
    std::fs::create_dir_all(outdir).map_err(|e| Error::io(outdir, e))?;
    let analyses = analysis::analyze_tree(&tree)?;

    for a in &analyses {
        let name = format!(
            "entry_{}_{}_{}_{}.json",
            sanitize(&a.org),
            sanitize(&a.system),
            a.benchmark,
            a.division
        );
        let json = serde_json::to_string_pretty(a).expect("analysis serializes");
        write_atomic(&outdir.join(name), json.as_bytes())?;
    }

    write_panels(outdir, &analyses)?;
    write_breakdown(outdir, &analyses)?;
    write_pca(outdir, &analyses)?;
    println!("wrote analysis for {} entries to {}", analyses.len(), outdir.display());
    Ok(0)
}

fn write_panels(outdir: &Path, analyses: &[EntryAnalysis]) -> Result<()> {
    let labels: Vec<String> = analyses.iter().map(|a| a.label()).collect();

    let mut a_csv = String::from("label,batch,n_units\n");
    let mut b_csv = String::from("label,batch,epochs_mean,epochs_std\n");
    let mut c_csv = String::from("label,n_units,train_tp_per_unit,eval_tp_per_unit\n");
    let mut d_csv = String::from("label,epochs_mean,epoch_tp,t_compute_min\n");
    for (a, label) in analyses.iter().zip(&labels) {
        let p: &ScalingPoint = &a.scaling_point;
        a_csv.push_str(&format!("{label},{},{}\n", p.batch, p.n_units));
        b_csv.push_str(&format!("{label},{},{},{}\n", p.batch, p.epochs_mean, p.epochs_std));
        c_csv.push_str(&format!(
            "{label},{},{},{}\n",
            p.n_units, p.train_tp_per_unit, p.eval_tp_per_unit
        ));
        // iso value: T_compute = epochs / epoch_tp, reported in minutes
        let t_compute_min = p.epochs_mean / p.epoch_tp / 60.0;
        d_csv.push_str(&format!(
            "{label},{},{},{}\n",
            p.epochs_mean, p.epoch_tp, t_compute_min
        ));
    }

    let pts = |f: &dyn Fn(&ScalingPoint) -> (f64, f64)| -> Vec<(f64, f64)> {
        analyses.iter().map(|a| f(&a.scaling_point)).collect()
    };
    let plot_a = svg::ScatterPlot::new("scale vs batch", "global batch size", "compute units")
        .log_log()
        .series("entries", pts(&|p| (p.batch as f64, p.n_units as f64)));
    let plot_b = svg::ScatterPlot::new("epochs to converge vs batch", "global batch size", "epochs")
        .log_log()
        .series("entries", pts(&|p| (p.batch as f64, p.epochs_mean)));
    let plot_c = svg::ScatterPlot::new("per-unit throughput vs scale", "compute units", "samples/s per unit")
        .log_log()
        .series("train", pts(&|p| (p.n_units as f64, p.train_tp_per_unit)))
        .series("eval", pts(&|p| (p.n_units as f64, p.eval_tp_per_unit)));
    let iso: Vec<f64> = analyses
        .iter()
        .map(|a| a.scaling_point.epochs_mean * a.scaling_point.epoch_tp)
        .collect();
    let plot_d = svg::ScatterPlot::new(
        "epoch throughput vs epochs (diagonals: constant compute time)",
        "epochs to converge",
        "epoch throughput (1/s)",
    )
    .log_log()
    .series("entries", pts(&|p| (p.epochs_mean, p.epoch_tp)))
    .iso_products(iso);

    for (stem, csv, plot) in [
        ("panel_a_units_batch", a_csv, plot_a),
        ("panel_b_batch_epochs", b_csv, plot_b),
        ("panel_c_units_throughput", c_csv, plot_c),
        ("panel_d_epochs_epoch_throughput", d_csv, plot_d),
    ] {
        write_atomic(&outdir.join(format!("{stem}.csv")), csv.as_bytes())?;
        write_atomic(&outdir.join(format!("{stem}.svg")), plot.render().as_bytes())?;
    }
    Ok(())
}

fn write_breakdown(outdir: &Path, analyses: &[EntryAnalysis]) -> Result<()> {
    let mut csv = String::from("label,f_staging,f_train,f_eval,f_extra\n");
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    for a in analyses {
        let f = a.relative_breakdown;
        csv.push_str(&format!("{},{},{},{},{}\n", a.label(), f[0], f[1], f[2], f[3]));
        labels.push(a.label());
        rows.push(f);
    }
    write_atomic(&outdir.join("breakdown.csv"), csv.as_bytes())?;
    let bars = svg::stacked_bars(
        "relative time breakdown",
        &labels,
        &["staging", "train", "eval", "extra"],
        &rows,
    );
    write_atomic(&outdir.join("breakdown.svg"), bars.as_bytes())
}

fn write_pca(outdir: &Path, analyses: &[EntryAnalysis]) -> Result<()> {
    for benchmark in [BenchmarkName::Cosmoflow, BenchmarkName::Deepcam] {
        let points = analysis::pca_points(analyses, benchmark);
        if points.len() < 2 {
            continue;
        }
        let pca = stats::log_pca(&points)?;
        let json = serde_json::to_string_pretty(&pca).expect("pca serializes");
        write_atomic(&outdir.join(format!("pca_{benchmark}.json")), json.as_bytes())?;
        let log_points: Vec<(f64, f64)> =
            points.iter().map(|&(e, t)| (e.log10(), t.log10())).collect();
        let plot = svg::pca_scatter(
            &format!("run variability, {benchmark} (log10 axes)"),
            &log_points,
            pca.mean,
            pca.components,
            pca.std_devs,
        );
        write_atomic(&outdir.join(format!("pca_{benchmark}.svg")), plot.as_bytes())?;
    }
    Ok(())
}

/// Baseline input for the predict command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BaselineEntry {
    pub schema_version: u32,
    pub benchmark: BenchmarkName,
    pub scaling_point: ScalingPoint,
    /// Staging time over full-pass epoch time at the baseline.
    pub staging_ratio: f64,
}

pub fn load_baseline(path: &Path) -> Result<BaselineEntry> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Json {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })
}

/// Loads a `batch,epochs` CSV into an [`EpochsCurve`].
pub fn load_curve(path: &Path) -> Result<EpochsCurve> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (i == 0 && line == "batch,epochs") {
            continue;
        }
        let row = i + 1;
        let mut cells = line.split(',');
        let (Some(b), Some(e), None) = (cells.next(), cells.next(), cells.next()) else {
            return Err(Error::MalformedRow {
                row,
                reason: "expected exactly two cells: batch,epochs".to_string(),
            });
        };
        let batch: u64 = b.trim().parse().map_err(|_| Error::MalformedRow {
            row,
            reason: format!("batch: cannot parse {b:?}"),
        })?;
        let epochs: f64 = e.trim().parse().map_err(|_| Error::MalformedRow {
            row,
            reason: format!("epochs: cannot parse {e:?}"),
        })?;
        points.push((batch, epochs));
    }
    EpochsCurve::new(points)
}

fn cmd_predict(baseline: &Path, curve: &Path, batch: u64) -> Result<i32> {
    let base = load_baseline(baseline)?;
    let curve = load_curve(curve)?;
    let spec = submission::benchmark_by_name(base.benchmark);
    let p = perfmodel::predict_tts(&base.scaling_point, base.staging_ratio, batch, &curve, &spec)?;
    println!("baseline_batch {}", base.scaling_point.batch);
    println!("target_batch {batch}");
    println!("factor {}", p.factor);
    println!("minutes {}", p.minutes);
    Ok(0)
}

fn cmd_characterize(records: &Path, tree: Option<&Path>, out: &Path) -> Result<i32> {
    let records = characterization::load_records(records)?;
    let epoch_times: BTreeMap<(BenchmarkName, String), f64> = match tree {
        Some(root) => {
            let tree = submission::load_submission(root)?;
            analysis::epoch_seconds_by_system(&analysis::analyze_tree(&tree)?)
        }
        None => BTreeMap::new(),
    };

    let mut csv = String::from(
        "benchmark,system,workers,io_bw_gbs,io_time_per_epoch_s,epoch_time_s,io_compute_ratio,hidden\n",
    );
    for r in &records {
        let workers = r.network_units;
        let io_time = match (r.io_bw_gbs, workers) {
            (Some(bw), Some(w)) if w > 0 => Some(characterization::io_time_per_epoch(
                submission::benchmark_by_name(r.benchmark).train_dataset_size_gb,
                w,
                bw,
            )),
            _ => None,
        };
        let epoch_s = epoch_times.get(&(r.benchmark, r.system.clone())).copied();
        let verdict = match (io_time, epoch_s) {
            (Some(io), Some(ep)) => Some(characterization::io_hidden(io, ep)),
            _ => None,
        };
        let fmt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.benchmark,
            r.system,
            workers.map(|w| w.to_string()).unwrap_or_default(),
            fmt(r.io_bw_gbs),
            fmt(io_time),
            fmt(epoch_s),
            fmt(verdict.map(|v| v.0)),
            verdict.map(|v| v.1.to_string()).unwrap_or_default(),
        ));
    }
    write_atomic(out, csv.as_bytes())?;
    println!("wrote {} ({} records)", out.display(), records.len());
    Ok(0)
}

fn cmd_synth(config: &Path, root: &Path) -> Result<i32> {
    let cfg = SynthConfig::from_kv_file(config)?;
    std::fs::create_dir_all(root).map_err(|e| Error::io(root, e))?;
    let truth = synth::generate_submission(&cfg, root)?;
    println!(
        "generated {} runs under {} (score {} min)",
        cfg.n_runs,
        root.display(),
        truth.score_min
    );
    Ok(0)
}

/// Checks whether a loaded tree scores identically to a sidecar written
/// by the generator; used by tests and examples.
pub fn tree_matches_ground_truth(tree: &SubmissionTree, truth: &synth::GroundTruth) -> Result<bool> {
    let entry = tree.entries.first().ok_or(Error::EmptyInput)?;
    let (score, _) = entry_score(entry, false)?;
    Ok((score - truth.score_min).abs() < 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::example_config;

    fn args(s: &[&str]) -> Vec<String> {
        std::iter::once("mlhpc".to_string())
            .chain(s.iter().map(|x| x.to_string()))
            .collect()
    }

    #[test]
    fn missing_path_is_environmental() {
        assert_eq!(run(args(&["validate", "/definitely/not/here"])), 2);
    }

    #[test]
    fn unknown_subcommand_is_usage_error() {
        assert_eq!(run(args(&["frobnicate"])), 2);
    }

    #[test]
    fn synth_then_validate_then_score_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().join("tree");
        let cfg_path = dir.path().join("synth.cfg");
        let cfg = example_config(17);
        let text = format!(
            "benchmark=cosmoflow\ndivision=closed\nn_runs=10\nn_units=512\nbatch=512\n\
             staging_min_mean=0.76\nstaging_min_std=0.004\nepoch_time_s=20.1\neval_time_s=0.85\n\
             eval_cadence=per_epoch\nepochs_to_converge_mean=100\nepochs_to_converge_cv=0.135\n\
             quality_start=0.5\nquality_decay=3.0\nseed=17\n"
        );
        std::fs::write(&cfg_path, text).unwrap();

        assert_eq!(
            run(args(&["synth", "--config", cfg_path.to_str().unwrap(), "--root", root.to_str().unwrap()])),
            0
        );
        assert_eq!(run(args(&["validate", root.to_str().unwrap()])), 0);

        let out = dir.path().join("scores.csv");
        assert_eq!(
            run(args(&["score", root.to_str().unwrap(), "--out", out.to_str().unwrap()])),
            0
        );
        let csv = std::fs::read_to_string(&out).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "org,system,benchmark,division,n_units,batch,score_minutes,n_runs_used"
        );
        let row = lines.next().unwrap();
        assert!(row.starts_with("synth,synth-512,cosmoflow,closed,512,512,"), "{row}");
        assert!(row.ends_with(",8"), "{row}");

        // the CSV score equals the sidecar
        let truth: crate::synth::GroundTruth = serde_json::from_str(
            &std::fs::read_to_string(root.join("ground_truth.json")).unwrap(),
        )
        .unwrap();
        let score: f64 = row.split(',').nth(6).unwrap().parse().unwrap();
        assert!((score - truth.score_min).abs() < 1e-9);
        let _ = cfg;
    }

    #[test]
    fn analyze_writes_expected_artifacts() {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().join("tree");
        synth::generate_submission(&example_config(19), &root).unwrap();
        let outdir = dir.path().join("report");
        assert_eq!(
            run(args(&["analyze", root.to_str().unwrap(), "--outdir", outdir.to_str().unwrap()])),
            0
        );
        for f in [
            "entry_synth_synth-512_cosmoflow_closed.json",
            "panel_a_units_batch.csv",
            "panel_b_batch_epochs.csv",
            "panel_c_units_throughput.csv",
            "panel_d_epochs_epoch_throughput.csv",
            "panel_d_epochs_epoch_throughput.svg",
            "breakdown.csv",
            "breakdown.svg",
            "pca_cosmoflow.json",
            "pca_cosmoflow.svg",
        ] {
            assert!(outdir.join(f).is_file(), "missing {f}");
        }
    }

    #[test]
    fn predict_command_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let baseline = BaselineEntry {
            schema_version: 1,
            benchmark: BenchmarkName::Cosmoflow,
            scaling_point: ScalingPoint {
                n_units: 512,
                batch: 512,
                epochs_mean: 100.0,
                epochs_std: 13.5,
                train_tp_per_unit: 26.59,
                eval_tp_per_unit: 151.88,
                epoch_tp: 0.0498,
                label: "base".into(),
            },
            staging_ratio: 2.27,
        };
        let bpath = dir.path().join("baseline.json");
        std::fs::write(&bpath, serde_json::to_string(&baseline).unwrap()).unwrap();
        let cpath = dir.path().join("curve.csv");
        std::fs::write(&cpath, "batch,epochs\n512,100\n1024,110\n2048,130\n").unwrap();

        assert_eq!(
            run(args(&["predict", "--baseline", bpath.to_str().unwrap(), "--curve", cpath.to_str().unwrap(), "--batch", "2048"])),
            0
        );
        // outside the curve span: domain failure
        assert_eq!(
            run(args(&["predict", "--baseline", bpath.to_str().unwrap(), "--curve", cpath.to_str().unwrap(), "--batch", "8192"])),
            1
        );
    }

    #[test]
    fn characterize_without_tree_leaves_verdict_empty() {
        let dir = tempfile::tempdir().unwrap();
        let rpath = dir.path().join("records.csv");
        std::fs::write(
            &rpath,
            "benchmark,system,memory_bw_gbs,network_bw_gbs,network_units,message_size_mb,io_bw_gbs,memory_tool,network_tool,io_tool\n\
             deepcam,ABCI,153.1,3.73,256,37.77,2.36,Nvprof,Timer-based,Darshan\n",
        )
        .unwrap();
        let out = dir.path().join("io.csv");
        assert_eq!(
            run(args(&["characterize", "--records", rpath.to_str().unwrap(), "--out", out.to_str().unwrap()])),
            0
        );
        let csv = std::fs::read_to_string(&out).unwrap();
        let row = csv.lines().nth(1).unwrap();
        let cells: Vec<&str> = row.split(',').collect();
        // io time = 7700 / 256 / 2.36
        let io_time: f64 = cells[4].parse().unwrap();
        assert!((io_time - 12.74).abs() < 0.01);
        assert_eq!(cells[5], "");
        assert_eq!(cells[7], "");
    }

    #[test]
    fn curve_csv_rejects_bad_rows() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.csv");
        std::fs::write(&p, "batch,epochs\n512,abc\n").unwrap();
        assert!(matches!(load_curve(&p), Err(Error::MalformedRow { row: 2, .. })));
    }
}
