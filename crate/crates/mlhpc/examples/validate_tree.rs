//! Run the rule checker over a submission tree and print its findings,
//! including what happens when a run is removed.

use mlhpc::compliance;
use mlhpc::submission;
use mlhpc::synth::{self, example_config};

fn main() -> mlhpc::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");
    synth::generate_submission(&example_config(21), dir.path())?;

    let tree = submission::load_submission(dir.path())?;
    let report = compliance::check_tree(&tree);
    println!("fresh tree passed: {}", report.passed);

    // knock out one run and check again
    std::fs::remove_file(
        dir.path().join("synth/results/synth-512/cosmoflow/result_0.txt"),
    )
    .expect("remove run");
    let tree = submission::load_submission(dir.path())?;
    let report = compliance::check_tree(&tree);
    println!("after removing a run, passed: {}", report.passed);
    for f in &report.findings {
        println!("  [{:?}] {}: {}", f.severity, f.code, f.message);
    }
    Ok(())
}
