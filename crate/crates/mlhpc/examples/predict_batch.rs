//! Predict time to solution at larger global batch sizes from one
//! measured baseline plus an epochs-to-converge curve.

use mlhpc::perfmodel::{self, EpochsCurve, ScalingPoint};
use mlhpc::submission::{benchmark_by_name, BenchmarkName};

fn main() -> mlhpc::Result<()> {
    let spec = benchmark_by_name(BenchmarkName::Cosmoflow);

    // measured baseline at batch 512 on 512 units
    let baseline = ScalingPoint {
        n_units: 512,
        batch: 512,
        epochs_mean: 42.0,
        epochs_std: 0.8,
        train_tp_per_unit: 26.0,
        eval_tp_per_unit: 150.0,
        epoch_tp: 0.0,
        label: "example/batch-512".into(),
    };
    let staging_ratio = 0.64;

    // epochs needed to reach the target quality, by global batch size
    let curve = EpochsCurve::new(vec![
        (512, 42.0),
        (1024, 42.5),
        (2048, 43.5),
        (4096, 44.5),
    ])?;

    println!("batch   factor   predicted_min");
    for batch in [512u64, 1024, 2048, 4096] {
        let p = perfmodel::predict_tts(&baseline, staging_ratio, batch, &curve, &spec)?;
        println!("{batch:5}   {:.4}   {:.2}", p.factor, p.minutes);
    }

    // out of the measured range the model refuses to extrapolate
    let err = perfmodel::predict_tts(&baseline, staging_ratio, 8192, &curve, &spec).unwrap_err();
    println!("batch 8192: {err}");
    Ok(())
}
