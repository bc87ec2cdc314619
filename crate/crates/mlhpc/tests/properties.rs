//! Property tests over the pure kernels.

use mlhpc::mllog::{emit_log_line, parse_log_line, EventType, LogEvent, Scalar};
use mlhpc::perfmodel::{self, EpochsCurve};
use mlhpc::scoring;
use mlhpc::stats;

use proptest::prelude::*;

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        Just(Scalar::Null),
        any::<bool>().prop_map(Scalar::Bool),
        any::<i64>().prop_map(Scalar::Int),
        (-1e15f64..1e15).prop_map(Scalar::Float),
        "[ -~]{0,24}".prop_map(Scalar::Str),
    ]
}

fn event_strategy() -> impl Strategy<Value = LogEvent> {
    (
        "[a-z0-9_]{1,20}",
        scalar_strategy(),
        0i64..i64::MAX / 2,
        prop_oneof![
            Just(EventType::IntervalStart),
            Just(EventType::IntervalEnd),
            Just(EventType::PointInTime)
        ],
        proptest::collection::btree_map("[a-z0-9_]{1,8}", scalar_strategy(), 0..4),
    )
        .prop_map(|(key, value, time_ms, event_type, metadata)| LogEvent {
            key,
            value,
            time_ms,
            event_type,
            metadata,
        })
}

proptest! {
    #[test]
    fn log_line_round_trips(e in event_strategy()) {
        let line = emit_log_line(&e);
        let back = parse_log_line(&line).unwrap().unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn score_is_permutation_invariant_and_bounded(
        mut times in proptest::collection::vec(0.1f64..1e4, 3..30),
        rot in 0usize..30,
    ) {
        let a = scoring::official_score(&times, 3).unwrap();
        let n = times.len();
        times.rotate_left(rot % n);
        let b = scoring::official_score(&times, 3).unwrap();
        prop_assert_eq!(a, b);

        let lo = times.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = times.iter().cloned().fold(0.0, f64::max);
        prop_assert!(a >= lo && a <= hi);
    }

    #[test]
    fn dropping_extremes_never_widens_the_range(
        times in proptest::collection::vec(0.1f64..1e4, 4..20),
    ) {
        let mut sorted = times.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let score = scoring::official_score(&times, 3).unwrap();
        // mean of the kept slice stays inside the kept extremes
        prop_assert!(score >= sorted[1] - 1e-12);
        prop_assert!(score <= sorted[sorted.len() - 2] + 1e-12);
    }

    #[test]
    fn pca_components_orthonormal_on_random_clouds(
        pts in proptest::collection::vec((1e-3f64..1e6, 1e-6f64..1e3), 2..40),
    ) {
        let r = stats::log_pca(&pts).unwrap();
        let [v1, v2] = r.components;
        prop_assert!((v1[0] * v1[0] + v1[1] * v1[1] - 1.0).abs() < 1e-9);
        prop_assert!((v2[0] * v2[0] + v2[1] * v2[1] - 1.0).abs() < 1e-9);
        prop_assert!((v1[0] * v2[0] + v1[1] * v2[1]).abs() < 1e-9);
        prop_assert!(r.std_devs[0] >= r.std_devs[1]);
        prop_assert!(v1[0] >= 0.0);
    }

    #[test]
    fn pca_is_permutation_invariant(
        pts in proptest::collection::vec((1e-3f64..1e6, 1e-6f64..1e3), 2..20),
        rot in 0usize..20,
    ) {
        let a = stats::log_pca(&pts).unwrap();
        let mut rotated = pts.clone();
        rotated.rotate_left(rot % pts.len());
        let b = stats::log_pca(&rotated).unwrap();
        prop_assert!((a.mean[0] - b.mean[0]).abs() < 1e-9);
        prop_assert!((a.std_devs[0] - b.std_devs[0]).abs() < 1e-9);
    }

    #[test]
    fn curve_interpolation_stays_between_bracketing_points(
        epochs in proptest::collection::vec(1.0f64..500.0, 2..6),
        frac in 0.0f64..1.0,
    ) {
        let points: Vec<(u64, f64)> = epochs
            .iter()
            .enumerate()
            .map(|(i, &e)| (64u64 << i, e))
            .collect();
        let curve = EpochsCurve::new(points.clone()).unwrap();
        let (lo, hi) = curve.span();
        let batch = lo + ((hi - lo) as f64 * frac) as u64;
        let e = curve.epochs_at(batch).unwrap();
        let min = epochs.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = epochs.iter().cloned().fold(0.0, f64::max);
        prop_assert!(e >= min - 1e-9 && e <= max + 1e-9);
    }

    #[test]
    fn staging_share_is_a_proper_fraction(r in 0.0f64..100.0, epochs in 1.0f64..1e4) {
        let s = perfmodel::staging_share_estimate(r, epochs);
        prop_assert!((0.0..1.0).contains(&s));
        // more epochs dilute the staging share
        prop_assert!(perfmodel::staging_share_estimate(r, epochs * 2.0) <= s);
    }

    #[test]
    fn mean_std_shift_invariance(
        xs in proptest::collection::vec(-1e6f64..1e6, 2..50),
        shift in -1e6f64..1e6,
    ) {
        let (m1, s1) = stats::mean_std(&xs).unwrap();
        let shifted: Vec<f64> = xs.iter().map(|x| x + shift).collect();
        let (m2, s2) = stats::mean_std(&shifted).unwrap();
        prop_assert!((m2 - m1 - shift).abs() < 1e-6);
        prop_assert!((s2 - s1).abs() < 1e-6);
    }
}
