//! Split a single run log into staging / training / evaluation / extra
//! time and print the relative breakdown.

use mlhpc::perfmodel;
use mlhpc::synth::{self, example_config};

fn main() -> mlhpc::Result<()> {
    let cfg = example_config(3);
    let (run, _) = synth::generate_run(&cfg, 0)?;
    println!("run has {} events", run.events.len());

    let d = perfmodel::decompose(&run, &cfg.spec())?;
    println!("staging  {:8.3} min", d.t_staging_min);
    println!("train    {:8.3} min", d.t_train_min);
    println!("eval     {:8.3} min ({} passes)", d.t_eval_min, d.n_eval_passes);
    println!("extra    {:8.3} min", d.t_extra_min);
    println!("total    {:8.3} min over {:.2} epochs", d.t_total_min, d.epochs_completed);

    let f = perfmodel::relative_breakdown(&d);
    println!(
        "fractions: staging {:.1}%  train {:.1}%  eval {:.1}%  extra {:.1}%",
        100.0 * f[0],
        100.0 * f[1],
        100.0 * f[2],
        100.0 * f[3]
    );

    let t_epoch_min = (d.t_train_min + d.t_eval_min) / d.epochs_completed;
    let r = perfmodel::staging_epoch_ratio(d.t_staging_min, t_epoch_min);
    println!(
        "staging overhead r = {r:.2} epochs; estimated staging share r/(r+epochs) = {:.2}%",
        100.0 * perfmodel::staging_share_estimate(r, d.epochs_completed)
    );
    Ok(())
}
