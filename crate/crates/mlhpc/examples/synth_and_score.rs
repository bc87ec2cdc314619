//! Generate a synthetic submission tree, load it back and score it,
//! checking the result against the generator's ground-truth sidecar.

use mlhpc::scoring;
use mlhpc::submission;
use mlhpc::synth::{self, example_config};

fn main() -> mlhpc::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");
    let cfg = example_config(7);
    let truth = synth::generate_submission(&cfg, dir.path())?;
    println!("generated {} runs under {}", cfg.n_runs, dir.path().display());

    let tree = submission::load_submission(dir.path())?;
    let entry = &tree.entries[0];
    let times: Vec<f64> = entry
        .runs
        .iter()
        .map(|r| scoring::run_time(r).map(|t| t.minutes))
        .collect::<mlhpc::Result<_>>()?;
    let score = scoring::official_score(&times, entry.benchmark.required_runs)?;

    println!("entry      {}", entry.label());
    println!("run times  {:?}", times.iter().map(|t| (t * 100.0).round() / 100.0).collect::<Vec<_>>());
    println!("score      {score:.4} min (drop fastest + slowest, mean the rest)");
    println!("sidecar    {:.4} min", truth.score_min);
    assert!((score - truth.score_min).abs() < 1e-9);
    println!("score matches the ground-truth sidecar");
    Ok(())
}
