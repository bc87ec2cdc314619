//! Principal components of run-to-run variability in log space:
//! each run contributes an (epochs, epoch throughput) point.

use mlhpc::analysis;
use mlhpc::stats;
use mlhpc::submission;
use mlhpc::synth::{self, example_config};

fn main() -> mlhpc::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");
    let mut cfg = example_config(42);
    cfg.n_runs = 25;
    let benchmark = cfg.benchmark;
    synth::generate_submission(&cfg, dir.path())?;

    let tree = submission::load_submission(dir.path())?;
    let analyses = analysis::analyze_tree(&tree)?;
    let points = analysis::pca_points(&analyses, benchmark);
    println!("{} runs -> {} (epochs, epoch-throughput) points", cfg.n_runs, points.len());

    let pca = stats::log_pca(&points)?;
    println!("log10 mean      [{:.4}, {:.4}]", pca.mean[0], pca.mean[1]);
    println!(
        "component 1     [{:+.4}, {:+.4}]  std {:.4}",
        pca.components[0][0], pca.components[0][1], pca.std_devs[0]
    );
    println!(
        "component 2     [{:+.4}, {:+.4}]  std {:.4}",
        pca.components[1][0], pca.components[1][1], pca.std_devs[1]
    );
    let ratio = pca.std_devs[0] / pca.std_devs[1].max(1e-300);
    println!("anisotropy      {ratio:.1}x");
    println!("a component pointing along [+1, -1] means slow runs both need more");
    println!("epochs and process them slower; [+1, +1] means cadence noise only");
    Ok(())
}
