//! Decide from bandwidth measurements whether per-epoch I/O can hide
//! behind compute, and round-trip the measurement CSV.

use std::collections::BTreeMap;

use mlhpc::characterization::{self, BandwidthRecord};
use mlhpc::submission::BenchmarkName;

fn main() -> mlhpc::Result<()> {
    let mut tools = BTreeMap::new();
    tools.insert("memory".to_string(), "stream".to_string());
    tools.insert("network".to_string(), "allreduce-bench".to_string());
    tools.insert("io".to_string(), "ior".to_string());
    let records = vec![BandwidthRecord {
        benchmark: BenchmarkName::Deepcam,
        system: "example-cluster".into(),
        memory_bw_gbs: Some(828.0),
        network_bw_gbs: Some(110.0),
        network_units: Some(256),
        message_size_mb: Some(220.0),
        io_bw_gbs: Some(2.36),
        tools,
    }];

    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("bandwidths.csv");
    characterization::emit_records(&records, &path)?;
    let back = characterization::load_records(&path)?;
    assert_eq!(back, records);
    println!("CSV round trip ok ({} record)", back.len());

    let r = &back[0];
    let workers = r.network_units.unwrap();
    let bw = r.io_bw_gbs.unwrap();
    // shard-resident training data per epoch, streamed by every worker
    let train_gb = 7700.0;
    let io_s = characterization::io_time_per_epoch(train_gb, workers, bw);
    let epoch_s = 99.6; // measured compute time per epoch at this scale
    let (ratio, hidden) = characterization::io_hidden(io_s, epoch_s);
    println!(
        "{} workers at {bw} GB/s each: {io_s:.2} s of I/O per epoch",
        workers
    );
    println!(
        "epoch compute {epoch_s} s -> ratio {ratio:.3}, I/O {} hide behind compute",
        if hidden { "can" } else { "cannot" }
    );
    Ok(())
}
