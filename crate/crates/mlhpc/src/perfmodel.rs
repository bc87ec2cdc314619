//! Time-to-solution decomposition and scaling analysis.
//!
//! The central model is `T_solution = T_staging + T_compute + T_extra`
//! with `T_compute = T_epoch * #epochs`, where an epoch time covers one
//! full pass over the training split plus one evaluation pass.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mllog::{pair_intervals, RunLog};
use crate::scoring::MS_PER_MINUTE;
use crate::submission::BenchmarkSpec;

/// Per-run staging / training / evaluation / extra split, in minutes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunDecomposition {
    pub t_staging_min: f64,
    pub t_train_min: f64,
    pub t_eval_min: f64,
    pub t_extra_min: f64,
    pub t_total_min: f64,
    pub epochs_completed: f64,
    pub train_steps: u64,
    pub n_eval_passes: usize,
}

/// One submission's scaling coordinates: the atom of the four-panel
/// compute analysis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingPoint {
    /// Accelerators for GPU systems, processors for CPU systems.
    pub n_units: u64,
    pub batch: u64,
    pub epochs_mean: f64,
    pub epochs_std: f64,
    /// Training sample throughput per compute unit, samples/s.
    pub train_tp_per_unit: f64,
    /// Evaluation sample throughput per compute unit, samples/s.
    pub eval_tp_per_unit: f64,
    /// Full-pass epoch throughput, epochs/s.
    pub epoch_tp: f64,
    pub label: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Train,
    Eval,
}

/// Epochs-to-converge as a function of global batch size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpochsCurve {
    points: Vec<(u64, f64)>,
}

impl EpochsCurve {
    /// Batches must be strictly increasing, epochs positive.
    pub fn new(points: Vec<(u64, f64)>) -> Result<EpochsCurve> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidConfig(
                    "curve batches must be strictly increasing".to_string(),
                ));
            }
        }
        if points.iter().any(|&(b, e)| b == 0 || e <= 0.0) {
            return Err(Error::NonPositiveValue);
        }
        Ok(EpochsCurve { points })
    }

    pub fn points(&self) -> &[(u64, f64)] {
        &self.points
    }

    pub fn span(&self) -> (u64, u64) {
        (self.points[0].0, self.points[self.points.len() - 1].0)
    }

    /// Piecewise-linear interpolation in log2(batch). Batch sizes in
    /// submissions are powers of two, so log-linear matches the curve's
    /// natural axes. Extrapolation beyond the endpoints is an error.
    pub fn epochs_at(&self, batch: u64) -> Result<f64> {
        let (lo, hi) = self.span();
        if batch < lo || batch > hi {
            return Err(Error::OutOfCurveRange { batch, lo, hi });
        }
        let x = (batch as f64).log2();
        for w in self.points.windows(2) {
            let (b0, e0) = w[0];
            let (b1, e1) = w[1];
            if batch >= b0 && batch <= b1 {
                let x0 = (b0 as f64).log2();
                let x1 = (b1 as f64).log2();
                let t = if x1 == x0 { 0.0 } else { (x - x0) / (x1 - x0) };
                return Ok(e0 + t * (e1 - e0));
            }
        }
        // single-point curve; batch == lo == hi
        Ok(self.points[0].1)
    }
}

const NEGATIVE_REMAINDER_SLACK_MS: f64 = 1.0;

/// Splits a finished run into staging / train / eval / extra time.
///
/// Training time is the sum of epoch intervals minus evaluation
/// intervals enclosed in them; extra is the unaccounted remainder and
/// must not be more negative than clock granularity (1 ms).
pub fn decompose(run: &RunLog, spec: &BenchmarkSpec) -> Result<RunDecomposition> {
    let stop = run.run_stop().ok_or(Error::MissingRunStop)?;
    let total_ms = (stop.time_ms - run.run_start().time_ms) as f64;

    let staging = pair_intervals(run, "staging")?;
    let epochs = pair_intervals(run, "epoch")?;
    let evals = pair_intervals(run, "eval")?;

    let staging_ms: f64 = staging.iter().map(|i| i.duration_ms() as f64).sum();
    if staging.is_empty() {
        log::warn!("{}: no staging interval, assuming zero", run.source.display());
    }
    let eval_ms: f64 = evals.iter().map(|i| i.duration_ms() as f64).sum();
    let enclosed_eval_ms: f64 = evals
        .iter()
        .filter(|e| epochs.iter().any(|ep| ep.contains(e)))
        .map(|i| i.duration_ms() as f64)
        .sum();
    let train_ms: f64 =
        epochs.iter().map(|i| i.duration_ms() as f64).sum::<f64>() - enclosed_eval_ms;

    let mut extra_ms = total_ms - staging_ms - train_ms - eval_ms;
    if extra_ms < -NEGATIVE_REMAINDER_SLACK_MS {
        return Err(Error::NegativeRemainder { extra_ms });
    }
    extra_ms = extra_ms.max(0.0);

    // epochs from optimizer steps when step_num was logged, otherwise
    // from the completed-epoch count
    let last_step = run.events.iter().filter_map(|e| e.step_num()).max();
    let batch = run.point_i64("global_batch_size");
    let (train_steps, epochs_completed) = match (last_step, batch) {
        (Some(s), Some(b)) if b > 0 => {
            let steps = (s + 1) as u64;
            (steps, steps as f64 * b as f64 / spec.n_train_samples as f64)
        }
        _ => {
            let n = epochs.len() as f64;
            let steps = batch
                .filter(|&b| b > 0)
                .map(|b| (n * spec.n_train_samples as f64 / b as f64).round() as u64)
                .unwrap_or(0);
            (steps, n)
        }
    };

    Ok(RunDecomposition {
        t_staging_min: staging_ms / MS_PER_MINUTE,
        t_train_min: train_ms / MS_PER_MINUTE,
        t_eval_min: eval_ms / MS_PER_MINUTE,
        t_extra_min: extra_ms / MS_PER_MINUTE,
        t_total_min: total_ms / MS_PER_MINUTE,
        epochs_completed,
        train_steps,
        n_eval_passes: evals.len(),
    })
}

/// Fractions of total time in [staging, train, eval, extra] order; they
/// sum to 1.
pub fn relative_breakdown(d: &RunDecomposition) -> [f64; 4] {
    let t = d.t_total_min;
    [
        d.t_staging_min / t,
        d.t_train_min / t,
        d.t_eval_min / t,
        d.t_extra_min / t,
    ]
}

/// Staging overhead in units of compute epochs.
pub fn staging_epoch_ratio(t_staging_min: f64, t_epoch_min: f64) -> f64 {
    t_staging_min / t_epoch_min
}

/// Estimated share of staging in time to solution, r / (r + epochs),
/// assuming negligible extra time.
pub fn staging_share_estimate(r: f64, epochs: f64) -> f64 {
    r / (r + epochs)
}

/// Full-pass epoch time in seconds: one pass over the training split
/// plus one pass over the evaluation split at the given aggregate
/// throughputs.
pub fn epoch_time_s(spec: &BenchmarkSpec, train_tp_agg: f64, eval_tp_agg: f64) -> f64 {
    spec.n_train_samples as f64 / train_tp_agg + spec.n_eval_samples as f64 / eval_tp_agg
}

/// Combined sample throughput and epoch throughput for one full pass
/// over both splits.
pub fn combined_epoch_throughput(
    spec: &BenchmarkSpec,
    train_tp_agg: f64,
    eval_tp_agg: f64,
) -> (f64, f64) {
    let t_epoch = epoch_time_s(spec, train_tp_agg, eval_tp_agg);
    let samples = (spec.n_train_samples + spec.n_eval_samples) as f64;
    (samples / t_epoch, 1.0 / t_epoch)
}

/// Rebuilds time to solution in minutes from a scaling point and its
/// staging time: staging + epochs * T_epoch.
pub fn reconstruct_tts_min(spec: &BenchmarkSpec, point: &ScalingPoint, t_staging_min: f64) -> f64 {
    let n = point.n_units as f64;
    let t_epoch = epoch_time_s(spec, point.train_tp_per_unit * n, point.eval_tp_per_unit * n);
    t_staging_min + point.epochs_mean * t_epoch / 60.0
}

/// Per-unit throughput ratio target/base for the chosen phase.
pub fn weak_scaling_efficiency(base: &ScalingPoint, target: &ScalingPoint, phase: Phase) -> f64 {
    match phase {
        Phase::Train => target.train_tp_per_unit / base.train_tp_per_unit,
        Phase::Eval => target.eval_tp_per_unit / base.eval_tp_per_unit,
    }
}

pub fn speedup(a_tts_min: f64, b_tts_min: f64) -> f64 {
    a_tts_min / b_tts_min
}

/// Compute budget in hour-units (h * accelerator or h * processor).
pub fn compute_budget(tts_min: f64, n_units: u64) -> f64 {
    tts_min / 60.0 * n_units as f64
}

/// Total optimizer steps for a (epochs, batch) point; constant along
/// the iso-step diagonals of the epoch-scaling panel.
pub fn iso_train_steps(epochs: f64, batch: u64, n_train: u64) -> f64 {
    epochs * n_train as f64 / batch as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    /// Predicted time to solution relative to the baseline.
    pub factor: f64,
    pub minutes: f64,
}

/// Predicts time to solution at another global batch size assuming
/// data-parallel weak scaling at fixed local batch: compute units grow
/// with the batch, so the epoch time shrinks proportionally while the
/// staging ratio and the epochs-to-converge curve set the overhead.
///
/// `factor(b) = (r + epochs(b)) * (b0 / b) / (r + epochs(b0))`, which
/// is exactly 1 at the baseline batch.
pub fn predict_tts(
    baseline: &ScalingPoint,
    baseline_staging_ratio: f64,
    target_batch: u64,
    curve: &EpochsCurve,
    spec: &BenchmarkSpec,
) -> Result<Prediction> {
    let e_base = curve.epochs_at(baseline.batch)?;
    let e_target = curve.epochs_at(target_batch)?;
    let r = baseline_staging_ratio;
    let factor = (r + e_target) * (baseline.batch as f64 / target_batch as f64) / (r + e_base);

    let n = baseline.n_units as f64;
    let t_epoch_s = epoch_time_s(
        spec,
        baseline.train_tp_per_unit * n,
        baseline.eval_tp_per_unit * n,
    );
    let baseline_minutes = reconstruct_tts_min(spec, baseline, r * t_epoch_s / 60.0);
    Ok(Prediction {
        factor,
        minutes: baseline_minutes * factor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mllog::{LogEvent, RunLog, Scalar};
    use crate::submission::{benchmark_by_name, BenchmarkName};

    fn cosmo() -> BenchmarkSpec {
        benchmark_by_name(BenchmarkName::Cosmoflow)
    }

    fn minutes(m: f64) -> i64 {
        (m * 60_000.0) as i64
    }

    /// total 20 min: staging 2, train 15, eval 2 (inside epochs), extra 1.
    fn twenty_minute_run() -> RunLog {
        let mut t = 0;
        let mut events = vec![LogEvent::start("run_start", t)];
        events.push(LogEvent::point("global_batch_size", Scalar::Int(64), t));
        events.push(LogEvent::start("staging_start", t));
        t += minutes(2.0);
        events.push(LogEvent::end("staging_stop", t));
        t += minutes(0.5); // extra before training
        for epoch in 1..=3 {
            events.push(LogEvent::start("epoch_start", t).with_meta("epoch_num", Scalar::Int(epoch)));
            t += minutes(5.0);
            events.push(LogEvent::start("eval_start", t));
            t += minutes(2.0 / 3.0);
            events.push(LogEvent::end("eval_stop", t));
            events.push(
                LogEvent::point("eval_accuracy", Scalar::Float(0.2 - 0.03 * epoch as f64), t)
                    .with_meta("epoch_num", Scalar::Int(epoch)),
            );
            events.push(LogEvent::end("epoch_stop", t).with_meta("epoch_num", Scalar::Int(epoch)));
        }
        t += minutes(0.5);
        events.push(LogEvent::end("run_stop", t).with_meta("status", Scalar::Str("success".into())));
        RunLog::new(events, "mem").unwrap()
    }

    #[test]
    fn decompose_twenty_minute_run() {
        let d = decompose(&twenty_minute_run(), &cosmo()).unwrap();
        assert!((d.t_staging_min - 2.0).abs() < 1e-6);
        assert!((d.t_train_min - 15.0).abs() < 1e-3);
        assert!((d.t_eval_min - 2.0).abs() < 1e-3);
        assert!((d.t_extra_min - 1.0).abs() < 1e-3);
        let sum = d.t_staging_min + d.t_train_min + d.t_eval_min + d.t_extra_min;
        assert!((sum - d.t_total_min).abs() / d.t_total_min < 1e-9);
        assert_eq!(d.n_eval_passes, 3);
        assert_eq!(d.epochs_completed, 3.0); // no step_num logged
    }

    #[test]
    fn decompose_without_staging_yields_zero() {
        let events = vec![
            LogEvent::start("run_start", 0),
            LogEvent::start("epoch_start", 0).with_meta("epoch_num", Scalar::Int(1)),
            LogEvent::end("epoch_stop", 60_000).with_meta("epoch_num", Scalar::Int(1)),
            LogEvent::end("run_stop", 60_000).with_meta("status", Scalar::Str("success".into())),
        ];
        let run = RunLog::new(events, "mem").unwrap();
        let d = decompose(&run, &cosmo()).unwrap();
        assert_eq!(d.t_staging_min, 0.0);
    }

    #[test]
    fn relative_breakdown_sums_to_one() {
        let d = RunDecomposition {
            t_staging_min: 2.0,
            t_train_min: 15.0,
            t_eval_min: 2.0,
            t_extra_min: 1.0,
            t_total_min: 20.0,
            epochs_completed: 3.0,
            train_steps: 0,
            n_eval_passes: 3,
        };
        let f = relative_breakdown(&d);
        assert_eq!(f, [0.10, 0.75, 0.10, 0.05]);
        assert!((f.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn all_train_breakdown() {
        let d = RunDecomposition {
            t_staging_min: 0.0,
            t_train_min: 10.0,
            t_eval_min: 0.0,
            t_extra_min: 0.0,
            t_total_min: 10.0,
            epochs_completed: 1.0,
            train_steps: 0,
            n_eval_passes: 0,
        };
        assert_eq!(relative_breakdown(&d), [0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn eval_share_matches_published_deepcam_fraction() {
        // Cori-GPU-64 DeepCAM spends just over a third of its time
        // evaluating due to its step-cadence evaluation schedule.
        let d = RunDecomposition {
            t_staging_min: 2.4,
            t_train_min: 84.0,
            t_eval_min: 50.59,
            t_extra_min: 2.3,
            t_total_min: 139.29,
            epochs_completed: 10.0,
            train_steps: 0,
            n_eval_passes: 45,
        };
        let f = relative_breakdown(&d);
        assert!((f[2] - 0.363).abs() < 0.002, "f_eval = {}", f[2]);
    }

    #[test]
    fn staging_ratio_examples() {
        assert!((staging_epoch_ratio(16.49, 6.46) - 2.55).abs() < 0.02);
        assert_eq!(staging_epoch_ratio(0.0, 5.0), 0.0);
        // Fugaku-512: ratio 0.64 at 1.55 min staging inverts to the epoch time
        let t_epoch: f64 = 1.55 / 0.64;
        assert!((t_epoch - 2.42).abs() < 0.01);
    }

    #[test]
    fn staging_share_examples() {
        assert!((staging_share_estimate(2.55, 53.88) - 0.0452).abs() < 5e-4);
        assert_eq!(staging_share_estimate(0.0, 10.0), 0.0);
        assert!((staging_share_estimate(5.55, 24.0) - 0.188).abs() < 1e-3);
    }

    #[test]
    fn staging_share_monotonicity() {
        assert!(staging_share_estimate(3.0, 50.0) > staging_share_estimate(2.0, 50.0));
        assert!(staging_share_estimate(2.0, 60.0) < staging_share_estimate(2.0, 50.0));
    }

    #[test]
    fn epoch_time_from_throughputs() {
        let spec = cosmo();
        let t = epoch_time_s(&spec, 12.07 * 64.0, 21.17 * 64.0);
        assert!((t - 387.7).abs() / 387.7 < 0.01, "t = {t}");
        let t = epoch_time_s(&spec, 26.59 * 512.0, 151.88 * 512.0);
        assert!((t - 20.10).abs() / 20.10 < 0.01, "t = {t}");
        // equal throughputs degenerate to (n_train + n_eval) / R
        let r = 1000.0;
        let t = epoch_time_s(&spec, r, r);
        let expect = (spec.n_train_samples + spec.n_eval_samples) as f64 / r;
        assert!((t - expect).abs() < 1e-9);
    }

    #[test]
    fn combined_throughput_examples() {
        let spec = cosmo();
        let (_, epoch_tp) = combined_epoch_throughput(&spec, 26.59 * 512.0, 151.88 * 512.0);
        assert!((epoch_tp - 0.0498).abs() / 0.0498 < 0.01, "epoch_tp = {epoch_tp}");
        let (samples, _) = combined_epoch_throughput(&spec, 500.0, 500.0);
        assert!((samples - 500.0).abs() < 1e-9);
    }

    #[test]
    fn reconstruct_trivial_case() {
        let spec = cosmo();
        // pick throughputs that give exactly a 60 s full-pass epoch
        let train_tp = spec.n_train_samples as f64 / 48.0;
        let eval_tp = spec.n_eval_samples as f64 / 12.0;
        let point = ScalingPoint {
            n_units: 1,
            batch: 64,
            epochs_mean: 1.0,
            epochs_std: 0.0,
            train_tp_per_unit: train_tp,
            eval_tp_per_unit: eval_tp,
            epoch_tp: 1.0 / 60.0,
            label: "unit".into(),
        };
        assert!((reconstruct_tts_min(&spec, &point, 0.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn efficiency_and_speedup_identity() {
        let p = ScalingPoint {
            n_units: 512,
            batch: 512,
            epochs_mean: 100.0,
            epochs_std: 13.5,
            train_tp_per_unit: 26.59,
            eval_tp_per_unit: 151.88,
            epoch_tp: 0.0498,
            label: "p".into(),
        };
        assert_eq!(weak_scaling_efficiency(&p, &p, Phase::Train), 1.0);
        assert_eq!(weak_scaling_efficiency(&p, &p, Phase::Eval), 1.0);
        assert_eq!(speedup(34.42, 34.42), 1.0);
    }

    #[test]
    fn iso_steps_arithmetic_and_scale_invariance() {
        assert_eq!(iso_train_steps(100.0, 512, 262_144), 51_200.0);
        let a = iso_train_steps(10.0, 64, 262_144);
        let b = iso_train_steps(30.0, 192, 262_144);
        assert!((a - b).abs() < 1e-9);
    }

    fn flat_curve() -> EpochsCurve {
        EpochsCurve::new(vec![(512, 100.0), (1024, 100.0), (2048, 100.0)]).unwrap()
    }

    fn abci_512_point() -> ScalingPoint {
        ScalingPoint {
            n_units: 512,
            batch: 512,
            epochs_mean: 100.0,
            epochs_std: 13.5,
            train_tp_per_unit: 26.59,
            eval_tp_per_unit: 151.88,
            epoch_tp: 0.0498,
            label: "ABCI-512".into(),
        }
    }

    #[test]
    fn predict_is_identity_at_baseline() {
        let p = predict_tts(&abci_512_point(), 2.27, 512, &flat_curve(), &cosmo()).unwrap();
        assert_eq!(p.factor, 1.0);
    }

    #[test]
    fn predict_flat_curve_halves_at_double_batch() {
        let p = predict_tts(&abci_512_point(), 0.0, 1024, &flat_curve(), &cosmo()).unwrap();
        assert!((p.factor - 0.5).abs() < 1e-12);
    }

    #[test]
    fn predict_rejects_extrapolation() {
        let err = predict_tts(&abci_512_point(), 0.0, 8192, &flat_curve(), &cosmo()).unwrap_err();
        assert!(matches!(err, Error::OutOfCurveRange { batch: 8192, .. }));
    }

    #[test]
    fn curve_interpolates_in_log2_batch() {
        let curve = EpochsCurve::new(vec![(512, 100.0), (2048, 140.0)]).unwrap();
        // 1024 is the log-midpoint of 512 and 2048
        assert!((curve.epochs_at(1024).unwrap() - 120.0).abs() < 1e-9);
    }

    #[test]
    fn curve_rejects_unsorted_batches() {
        assert!(EpochsCurve::new(vec![(512, 1.0), (512, 2.0)]).is_err());
    }
}
