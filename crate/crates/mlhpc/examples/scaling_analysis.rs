//! Analyze entries at two system sizes and compare them: scaling
//! points, weak-scaling efficiency, speedup and compute budget.

use mlhpc::analysis;
use mlhpc::perfmodel::{self, Phase};
use mlhpc::submission;
use mlhpc::synth::{self, example_config};

fn main() -> mlhpc::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");

    // small and large configurations of the same workload; the large
    // one runs 4x the units at 4x the batch with slightly worse
    // per-unit throughput and more epochs to converge
    let small = example_config(11);
    let mut large = example_config(11);
    large.n_units = small.n_units * 4;
    large.batch = small.batch * 4;
    large.epoch_time_s = small.epoch_time_s / 3.4;
    large.epochs_to_converge_mean = small.epochs_to_converge_mean * 1.25;

    synth::generate_submission(&small, dir.path())?;
    synth::generate_submission(&large, dir.path())?;

    let tree = submission::load_submission(dir.path())?;
    let analyses = analysis::analyze_tree(&tree)?;

    for a in &analyses {
        let p = &a.scaling_point;
        println!("{}", a.label());
        println!("  units {:5}  batch {:5}", a.n_units, a.batch);
        println!(
            "  epochs {:.2} +- {:.2}, train tp/unit {:.3}, eval tp/unit {:.3} samples/s",
            p.epochs_mean, p.epochs_std, p.train_tp_per_unit, p.eval_tp_per_unit
        );
        if let (Some(score), Some(budget)) = (a.score_min, a.budget_unit_hours) {
            println!("  score {score:.2} min, budget {budget:.1} unit-hours");
        }
    }

    let (a, b) = (&analyses[0], &analyses[1]);
    let (base, target) = if a.n_units <= b.n_units { (a, b) } else { (b, a) };
    println!(
        "train weak-scaling efficiency {}x -> {}x units: {:.1}%",
        base.n_units,
        target.n_units,
        100.0 * perfmodel::weak_scaling_efficiency(
            &base.scaling_point,
            &target.scaling_point,
            Phase::Train
        )
    );
    if let (Some(sb), Some(st)) = (base.score_min, target.score_min) {
        println!("speedup {:.2}x", perfmodel::speedup(sb, st));
    }
    Ok(())
}
