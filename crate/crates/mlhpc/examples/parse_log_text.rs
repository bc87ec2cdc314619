//! Parse a raw structured log from text, list its interval pairs and
//! show that emitting an event reproduces the line exactly.

use mlhpc::mllog::{emit_log_line, pair_intervals, parse_run_log};

const LOG: &str = r#"some free-form preamble the parser ignores
:::MLLOG {"key": "run_start", "value": null, "time_ms": 1000, "event_type": "INTERVAL_START", "metadata": {}}
:::MLLOG {"key": "global_batch_size", "value": 64, "time_ms": 1000, "event_type": "POINT_IN_TIME", "metadata": {}}
:::MLLOG {"key": "staging_start", "value": null, "time_ms": 1000, "event_type": "INTERVAL_START", "metadata": {}}
:::MLLOG {"key": "staging_stop", "value": null, "time_ms": 61000, "event_type": "INTERVAL_END", "metadata": {}}
:::MLLOG {"key": "epoch_start", "value": null, "time_ms": 61000, "event_type": "INTERVAL_START", "metadata": {"epoch_num": 1}}
:::MLLOG {"key": "eval_start", "value": null, "time_ms": 100000, "event_type": "INTERVAL_START", "metadata": {}}
:::MLLOG {"key": "eval_stop", "value": null, "time_ms": 103000, "event_type": "INTERVAL_END", "metadata": {}}
:::MLLOG {"key": "epoch_stop", "value": null, "time_ms": 121000, "event_type": "INTERVAL_END", "metadata": {"epoch_num": 1}}
:::MLLOG {"key": "run_stop", "value": null, "time_ms": 121000, "event_type": "INTERVAL_END", "metadata": {"status": "success"}}
"#;

fn main() -> mlhpc::Result<()> {
    let run = parse_run_log(LOG.as_bytes(), "inline.txt")?;
    println!("parsed {} events", run.events.len());

    for key in ["staging", "epoch", "eval", "run"] {
        for iv in pair_intervals(&run, key)? {
            println!(
                "{key:8} [{:>7} ms .. {:>7} ms] = {:.1} s",
                iv.start_ms,
                iv.end_ms,
                (iv.end_ms - iv.start_ms) as f64 / 1000.0
            );
        }
    }

    // emit is the exact inverse of parse for every event
    let line = emit_log_line(&run.events[1]);
    println!("{line}");
    Ok(())
}
