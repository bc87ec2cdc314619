//! Deterministic synthetic-submission generator.
//!
//! Emits compliance-clean log trees together with a ground-truth
//! sidecar computed from the same integer-millisecond timeline, so the
//! sidecar and any decomposition of the emitted logs agree exactly.
//!
//! Randomness: per-run streams are ChaCha8, seeded from
//! SHA-256("mlhpc-synth" || seed || run_index), so runs are independent
//! and reproducible across platforms.

use std::collections::BTreeMap;
use std::path::Path;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal, Normal};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::mllog::{emit_log_line, LogEvent, RunLog, Scalar};
use crate::submission::{benchmark_by_name, BenchmarkName, BenchmarkSpec, Division, QualityDirection};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EvalCadence {
    PerEpoch,
    EveryKSteps(u64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub benchmark: BenchmarkName,
    pub division: Division,
    pub n_runs: usize,
    pub n_units: u64,
    pub batch: u64,
    pub staging_min_mean: f64,
    pub staging_min_std: f64,
    pub epoch_time_s: f64,
    pub eval_time_s: f64,
    pub eval_cadence: EvalCadence,
    pub epochs_to_converge_mean: f64,
    pub epochs_to_converge_cv: f64,
    pub quality_start: f64,
    pub quality_decay: f64,
    pub seed: u64,
}

impl SynthConfig {
    pub fn spec(&self) -> BenchmarkSpec {
        benchmark_by_name(self.benchmark)
    }

    pub fn validate(&self) -> Result<()> {
        let spec = self.spec();
        let fail = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if self.n_runs < spec.required_runs {
            return fail(&format!(
                "n_runs {} below the benchmark's required {}",
                self.n_runs, spec.required_runs
            ));
        }
        if self.n_units == 0 || self.batch == 0 {
            return fail("n_units and batch must be positive");
        }
        if self.staging_min_mean <= 0.0 || self.staging_min_std < 0.0 {
            return fail("staging_min_mean must be positive, staging_min_std non-negative");
        }
        if self.epoch_time_s <= 0.0 || self.eval_time_s <= 0.0 {
            return fail("epoch_time_s and eval_time_s must be positive");
        }
        if let EvalCadence::EveryKSteps(0) = self.eval_cadence {
            return fail("every_k_steps cadence needs k >= 1");
        }
        if self.epochs_to_converge_mean <= 0.0 || self.epochs_to_converge_cv < 0.0 {
            return fail("epochs_to_converge_mean must be positive, cv non-negative");
        }
        if self.quality_decay <= 0.0 {
            return fail("quality_decay must be positive");
        }
        let start_ok = match spec.quality_direction {
            QualityDirection::Minimize => self.quality_start > spec.quality_target,
            QualityDirection::Maximize => self.quality_start < spec.quality_target,
        };
        if !start_ok {
            return fail("quality_start must be on the non-converged side of the target");
        }
        Ok(())
    }

    /// Parses the flat `key=value` config format. `#` starts a comment.
    pub fn from_kv_str(text: &str) -> Result<SynthConfig> {
        let mut map: BTreeMap<&str, &str> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(Error::InvalidConfig(format!(
                    "line {}: expected key=value, got {raw:?}",
                    i + 1
                )));
            };
            map.insert(k.trim(), v.trim());
        }
        let get = |k: &str| {
            map.get(k)
                .copied()
                .ok_or_else(|| Error::InvalidConfig(format!("missing key {k}")))
        };
        fn num<T: std::str::FromStr>(k: &str, v: &str) -> Result<T> {
            v.parse()
                .map_err(|_| Error::InvalidConfig(format!("{k}: cannot parse {v:?}")))
        }
        let cadence = match get("eval_cadence")? {
            "per_epoch" => EvalCadence::PerEpoch,
            other => match other.strip_prefix("every_k_steps:") {
                Some(k) => EvalCadence::EveryKSteps(num("eval_cadence", k)?),
                None => {
                    return Err(Error::InvalidConfig(format!(
                        "eval_cadence: expected per_epoch or every_k_steps:<k>, got {other:?}"
                    )))
                }
            },
        };
        let cfg = SynthConfig {
            benchmark: BenchmarkName::parse(get("benchmark")?)
                .ok_or_else(|| Error::InvalidConfig("unknown benchmark".to_string()))?,
            division: Division::parse(get("division")?)
                .ok_or_else(|| Error::InvalidConfig("unknown division".to_string()))?,
            n_runs: num("n_runs", get("n_runs")?)?,
            n_units: num("n_units", get("n_units")?)?,
            batch: num("batch", get("batch")?)?,
            staging_min_mean: num("staging_min_mean", get("staging_min_mean")?)?,
            staging_min_std: num("staging_min_std", get("staging_min_std")?)?,
            epoch_time_s: num("epoch_time_s", get("epoch_time_s")?)?,
            eval_time_s: num("eval_time_s", get("eval_time_s")?)?,
            eval_cadence: cadence,
            epochs_to_converge_mean: num(
                "epochs_to_converge_mean",
                get("epochs_to_converge_mean")?,
            )?,
            epochs_to_converge_cv: num("epochs_to_converge_cv", get("epochs_to_converge_cv")?)?,
            quality_start: num("quality_start", get("quality_start")?)?,
            quality_decay: num("quality_decay", get("quality_decay")?)?,
            seed: num("seed", get("seed")?)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_kv_file(path: impl AsRef<Path>) -> Result<SynthConfig> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::io(path.as_ref(), e))?;
        SynthConfig::from_kv_str(&text)
    }

    pub fn system_name(&self) -> String {
        format!("synth-{}", self.n_units)
    }
}

/// Ground truth for one generated run, derived from the emitted
/// integer-millisecond timeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTruth {
    pub t_staging_min: f64,
    pub t_train_min: f64,
    pub t_eval_min: f64,
    pub t_extra_min: f64,
    pub t_total_min: f64,
    pub epochs: f64,
    pub train_steps: u64,
    pub n_eval_passes: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub schema_version: u32,
    pub benchmark: BenchmarkName,
    pub division: Division,
    pub n_units: u64,
    pub batch: u64,
    pub seed: u64,
    pub runs: Vec<RunTruth>,
    pub score_min: f64,
    pub mean_staging_min: f64,
    pub mean_train_min: f64,
    pub mean_eval_min: f64,
    pub mean_epochs: f64,
}

fn run_rng(seed: u64, run_index: u64) -> ChaCha8Rng {
    let mut hasher = Sha256::new();
    hasher.update(b"mlhpc-synth");
    hasher.update(seed.to_le_bytes());
    hasher.update(run_index.to_le_bytes());
    let digest = hasher.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(key)
}

const TIME_BASE_MS: i64 = 1_600_000_000_000;

fn quality_value(spec: &BenchmarkSpec, cfg: &SynthConfig, progress: f64, last: bool) -> f64 {
    // metric approaches the target exponentially, crossing it exactly
    // at the sampled convergence step
    let margin = 1e-4 * spec.quality_target.abs().max(1e-9);
    let cross = match spec.quality_direction {
        QualityDirection::Minimize => spec.quality_target - margin,
        QualityDirection::Maximize => spec.quality_target + margin,
    };
    if last {
        return cross;
    }
    let d = cfg.quality_decay;
    let g = (1.0 - (-d * progress).exp()) / (1.0 - (-d).exp());
    let v = cfg.quality_start + (cross - cfg.quality_start) * g;
    // keep intermediate values on the non-converged side
    match spec.quality_direction {
        QualityDirection::Minimize => v.max(spec.quality_target),
        QualityDirection::Maximize => v.min(spec.quality_target),
    }
}

/// Generates one run log and the matching ground-truth slice.
pub fn generate_run(cfg: &SynthConfig, run_index: usize) -> Result<(RunLog, RunTruth)> {
    cfg.validate()?;
    let spec = cfg.spec();
    let mut rng = run_rng(cfg.seed, run_index as u64);

    let staging_min = if cfg.staging_min_std > 0.0 {
        let normal = Normal::new(cfg.staging_min_mean, cfg.staging_min_std)
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        normal.sample(&mut rng).max(cfg.staging_min_mean / 100.0)
    } else {
        cfg.staging_min_mean
    };
    let staging_ms = ((staging_min * 60_000.0).round() as i64).max(1);

    let epochs_target = if cfg.epochs_to_converge_cv > 0.0 {
        let sigma2 = (1.0 + cfg.epochs_to_converge_cv.powi(2)).ln();
        let mu = cfg.epochs_to_converge_mean.ln() - sigma2 / 2.0;
        let lognormal = LogNormal::new(mu, sigma2.sqrt())
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        lognormal.sample(&mut rng)
    } else {
        cfg.epochs_to_converge_mean
    };

    let n_train = spec.n_train_samples;
    let steps_per_epoch = (n_train + cfg.batch - 1) / cfg.batch;
    let steps_total =
        ((epochs_target * n_train as f64 / cfg.batch as f64).ceil() as u64).max(1);
    let n_epochs = (steps_total + steps_per_epoch - 1) / steps_per_epoch;
    let epochs_fractional = steps_total as f64 * cfg.batch as f64 / n_train as f64;

    let t0 = TIME_BASE_MS;
    let mut events = vec![LogEvent::start("run_start", t0)];
    let point = |key: &str, value: Scalar| LogEvent::point(key, value, t0);
    events.push(point(
        "submission_benchmark",
        Scalar::Str(spec.name.as_str().to_string()),
    ));
    events.push(point(
        "submission_division",
        Scalar::Str(cfg.division.as_str().to_string()),
    ));
    events.push(point("submission_org", Scalar::Str("synth".to_string())));
    events.push(point(
        "submission_platform",
        Scalar::Str(cfg.system_name()),
    ));
    events.push(
        point("global_batch_size", Scalar::Int(cfg.batch as i64))
            .with_meta("tunable", Scalar::Bool(true)),
    );
    events.push(point("num_compute_units", Scalar::Int(cfg.n_units as i64)));
    events.push(point("train_samples", Scalar::Int(n_train as i64)));
    events.push(point("eval_samples", Scalar::Int(spec.n_eval_samples as i64)));

    events.push(LogEvent::start("staging_start", t0));
    let mut t = t0 + staging_ms;
    events.push(LogEvent::end("staging_stop", t));

    let epoch_ms_full = (cfg.epoch_time_s * 1000.0).round() as i64;
    let eval_ms = ((cfg.eval_time_s * 1000.0).round() as i64).max(1);

    let mut train_ms_sum: i64 = 0;
    let mut eval_ms_sum: i64 = 0;
    let mut n_evals: usize = 0;

    for epoch in 1..=n_epochs {
        let steps_before = (epoch - 1) * steps_per_epoch;
        let steps_this = steps_per_epoch.min(steps_total - steps_before);
        let steps_after = steps_before + steps_this;
        let is_last = epoch == n_epochs;

        events.push(
            LogEvent::start("epoch_start", t).with_meta("epoch_num", Scalar::Int(epoch as i64)),
        );
        let train_ms = ((epoch_ms_full as f64) * (steps_this as f64 / steps_per_epoch as f64))
            .round() as i64;
        t += train_ms.max(1);
        train_ms_sum += train_ms.max(1);

        // steps at which an evaluation fires inside this epoch
        let mut eval_steps: Vec<u64> = match cfg.eval_cadence {
            EvalCadence::PerEpoch => vec![steps_after],
            EvalCadence::EveryKSteps(k) => {
                let first = steps_before / k + 1;
                (first..).map(|m| m * k).take_while(|&s| s <= steps_after).collect()
            }
        };
        if is_last && eval_steps.last() != Some(&steps_total) {
            eval_steps.push(steps_total);
        }

        for step in eval_steps {
            events.push(LogEvent::start("eval_start", t));
            t += eval_ms;
            eval_ms_sum += eval_ms;
            n_evals += 1;
            events.push(LogEvent::end("eval_stop", t));
            let last_eval = is_last && step == steps_total;
            let value = quality_value(&spec, cfg, step as f64 / steps_total as f64, last_eval);
            events.push(
                LogEvent::point(&spec.quality_key, Scalar::Float(value), t)
                    .with_meta("epoch_num", Scalar::Int(epoch as i64))
                    .with_meta("step_num", Scalar::Int(step as i64 - 1)),
            );
        }
        events.push(
            LogEvent::end("epoch_stop", t).with_meta("epoch_num", Scalar::Int(epoch as i64)),
        );
    }

    events.push(
        LogEvent::end("run_stop", t).with_meta("status", Scalar::Str("success".to_string())),
    );

    let truth = RunTruth {
        t_staging_min: staging_ms as f64 / 60_000.0,
        t_train_min: train_ms_sum as f64 / 60_000.0,
        t_eval_min: eval_ms_sum as f64 / 60_000.0,
        t_extra_min: 0.0,
        t_total_min: (t - t0) as f64 / 60_000.0,
        epochs: epochs_fractional,
        train_steps: steps_total,
        n_eval_passes: n_evals,
    };
    let source = format!("synth:seed={}:run={}", cfg.seed, run_index);
    Ok((RunLog::new(events, source)?, truth))
}

/// Renders a run as its log text, one event per line, LF terminated.
pub fn render_run(run: &RunLog) -> String {
    let mut out = String::new();
    for e in &run.events {
        out.push_str(&emit_log_line(e));
        out.push('\n');
    }
    out
}

fn ground_truth(cfg: &SynthConfig, runs: &[RunTruth]) -> GroundTruth {
    // independent of scoring::official_score on purpose
    let mut times: Vec<f64> = runs.iter().map(|r| r.t_total_min).collect();
    times.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let kept = &times[1..times.len() - 1];
    let score = kept.iter().sum::<f64>() / kept.len() as f64;
    let mean = |f: fn(&RunTruth) -> f64| runs.iter().map(f).sum::<f64>() / runs.len() as f64;
    GroundTruth {
        schema_version: 1,
        benchmark: cfg.benchmark,
        division: cfg.division,
        n_units: cfg.n_units,
        batch: cfg.batch,
        seed: cfg.seed,
        runs: runs.to_vec(),
        score_min: score,
        mean_staging_min: mean(|r| r.t_staging_min),
        mean_train_min: mean(|r| r.t_train_min),
        mean_eval_min: mean(|r| r.t_eval_min),
        mean_epochs: mean(|r| r.epochs),
    }
}

/// Generates all runs of a config in memory.
pub fn generate_runs(cfg: &SynthConfig) -> Result<(Vec<RunLog>, GroundTruth)> {
    let mut runs = Vec::new();
    let mut truths = Vec::new();
    for i in 0..cfg.n_runs {
        let (run, truth) = generate_run(cfg, i)?;
        runs.push(run);
        truths.push(truth);
    }
    Ok((runs, ground_truth(cfg, &truths)))
}

/// Writes the full submission directory layout under `root` plus a
/// `ground_truth.json` sidecar at the root, outside the org tree.
pub fn generate_submission(cfg: &SynthConfig, root: impl AsRef<Path>) -> Result<GroundTruth> {
    let root = root.as_ref();
    let (runs, truth) = generate_runs(cfg)?;

    let org_dir = root.join("synth");
    let systems_dir = org_dir.join("systems");
    let results_dir = org_dir
        .join("results")
        .join(cfg.system_name())
        .join(cfg.benchmark.as_str());
    std::fs::create_dir_all(&systems_dir).map_err(|e| Error::io(&systems_dir, e))?;
    std::fs::create_dir_all(&results_dir).map_err(|e| Error::io(&results_dir, e))?;

    let system = serde_json::json!({
        "system_name": cfg.system_name(),
        "n_nodes": cfg.n_units,
        "processors_per_node": 1,
        "accelerators_per_node": 0,
        "memory_per_node_gb": 256.0,
        "notes": "synthetic system",
    });
    let sys_path = systems_dir.join(format!("{}.json", cfg.system_name()));
    std::fs::write(&sys_path, serde_json::to_string_pretty(&system).unwrap())
        .map_err(|e| Error::io(&sys_path, e))?;

    for (k, run) in runs.iter().enumerate() {
        let path = results_dir.join(format!("result_{k}.txt"));
        std::fs::write(&path, render_run(run)).map_err(|e| Error::io(&path, e))?;
    }

    let truth_path = root.join("ground_truth.json");
    std::fs::write(&truth_path, serde_json::to_string_pretty(&truth).unwrap())
        .map_err(|e| Error::io(&truth_path, e))?;
    Ok(truth)
}

/// A ready-made config for tests and examples, roughly shaped like a
/// mid-size CosmoFlow submission.
pub fn example_config(seed: u64) -> SynthConfig {
    SynthConfig {
        benchmark: BenchmarkName::Cosmoflow,
        division: Division::Closed,
        n_runs: 10,
        n_units: 512,
        batch: 512,
        staging_min_mean: 0.76,
        staging_min_std: 0.004,
        epoch_time_s: 20.1,
        eval_time_s: 0.85,
        eval_cadence: EvalCadence::PerEpoch,
        epochs_to_converge_mean: 100.0,
        epochs_to_converge_cv: 0.135,
        quality_start: 0.5,
        quality_decay: 3.0,
        seed,
    }
}
