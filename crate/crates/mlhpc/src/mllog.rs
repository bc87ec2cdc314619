//! Structured benchmark log format: one event per line, prefixed with
//! `:::MLLOG `, followed by a single-line JSON payload.
//!
//! Lines without the sentinel are silently skipped so that logs may be
//! interleaved with scheduler and framework output.

use std::collections::BTreeMap;
use std::io::BufRead;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sentinel that must open a line, at column 0, for it to be treated
/// as a log event.
pub const SENTINEL: &str = ":::MLLOG ";

/// A scalar log value. Objects and arrays are rejected at parse time;
/// everything else is preserved verbatim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
}

impl Scalar {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Scalar::Int(i) => Some(*i as f64),
            Scalar::Float(f) => Some(*f),
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Scalar::Int(i) => Some(*i),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Scalar::Str(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EventType {
    IntervalStart,
    IntervalEnd,
    PointInTime,
}

/// One structured log record. Field order in the struct fixes the key
/// order of the emitted JSON payload.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogEvent {
    pub key: String,
    pub value: Scalar,
    pub time_ms: i64,
    pub event_type: EventType,
    pub metadata: BTreeMap<String, Scalar>,
}

impl LogEvent {
    pub fn point(key: &str, value: Scalar, time_ms: i64) -> LogEvent {
        LogEvent {
            key: key.to_string(),
            value,
            time_ms,
            event_type: EventType::PointInTime,
            metadata: BTreeMap::new(),
        }
    }

    pub fn start(key: &str, time_ms: i64) -> LogEvent {
        LogEvent {
            key: key.to_string(),
            value: Scalar::Null,
            time_ms,
            event_type: EventType::IntervalStart,
            metadata: BTreeMap::new(),
        }
    }

    pub fn end(key: &str, time_ms: i64) -> LogEvent {
        LogEvent {
            key: key.to_string(),
            value: Scalar::Null,
            time_ms,
            event_type: EventType::IntervalEnd,
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: Scalar) -> LogEvent {
        self.metadata.insert(key.to_string(), value);
        self
    }

    /// epoch_num metadata, when present and integral.
    pub fn epoch_num(&self) -> Option<i64> {
        self.metadata.get("epoch_num").and_then(Scalar::as_i64)
    }

    /// step_num metadata, when present and integral.
    pub fn step_num(&self) -> Option<i64> {
        self.metadata.get("step_num").and_then(Scalar::as_i64)
    }

    fn validate(&self) -> std::result::Result<(), String> {
        if self.time_ms < 0 {
            return Err(format!("negative time_ms {}", self.time_ms));
        }
        if self.key.is_empty() {
            return Err("empty key".to_string());
        }
        if !self
            .key
            .bytes()
            .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_')
        {
            return Err(format!("key {:?} contains characters outside [a-z0-9_]", self.key));
        }
        Ok(())
    }
}

/// Parses a single line. Returns `Ok(None)` for non-sentinel lines so
/// interleaved stdout is tolerated; `MalformedEvent` when the sentinel
/// is present but the payload is broken. Line numbers are attached by
/// [`parse_run_log`].
pub fn parse_log_line(line: &str) -> Result<Option<LogEvent>> {
    let Some(payload) = line.strip_prefix(SENTINEL) else {
        return Ok(None);
    };
    let event: LogEvent = serde_json::from_str(payload.trim_end()).map_err(|e| {
        Error::MalformedEvent {
            line: 0,
            reason: e.to_string(),
        }
    })?;
    event.validate().map_err(|reason| Error::MalformedEvent { line: 0, reason })?;
    Ok(Some(event))
}

/// Serializes an event to its line representation. `parse_log_line`
/// reproduces the event field-for-field.
pub fn emit_log_line(event: &LogEvent) -> String {
    // BTreeMap keys serialize sorted, so output is deterministic.
    let payload = serde_json::to_string(event).expect("log event serializes");
    format!("{SENTINEL}{payload}")
}

/// The ordered event stream of one benchmark run.
#[derive(Debug, Clone)]
pub struct RunLog {
    pub events: Vec<LogEvent>,
    pub source: PathBuf,
}

impl RunLog {
    /// Builds a run log from in-memory events, verifying the same
    /// invariants as [`parse_run_log`].
    pub fn new(events: Vec<LogEvent>, source: impl Into<PathBuf>) -> Result<RunLog> {
        let run = RunLog {
            events,
            source: source.into(),
        };
        run.verify()?;
        Ok(run)
    }

    fn verify(&self) -> Result<()> {
        let mut prev = i64::MIN;
        for (i, e) in self.events.iter().enumerate() {
            if e.time_ms < prev {
                return Err(Error::NonMonotonicTime { line: i + 1 });
            }
            prev = e.time_ms;
        }
        let starts: Vec<_> = self.events.iter().filter(|e| e.key == "run_start").collect();
        match starts.len() {
            0 => return Err(Error::MissingRunStart),
            1 => {}
            n => {
                return Err(Error::MalformedEvent {
                    line: 0,
                    reason: format!("{n} run_start events, expected exactly one"),
                })
            }
        }
        if self.events.iter().filter(|e| e.key == "run_stop").count() > 1 {
            return Err(Error::MalformedEvent {
                line: 0,
                reason: "more than one run_stop event".to_string(),
            });
        }
        let start_ms = starts[0].time_ms;
        if self.events.iter().any(|e| e.time_ms < start_ms) {
            return Err(Error::MalformedEvent {
                line: 0,
                reason: "run_start is not the earliest event".to_string(),
            });
        }
        Ok(())
    }

    pub fn run_start(&self) -> &LogEvent {
        self.events
            .iter()
            .find(|e| e.key == "run_start")
            .expect("verified at construction")
    }

    pub fn run_stop(&self) -> Option<&LogEvent> {
        self.events.iter().find(|e| e.key == "run_stop")
    }

    /// First POINT_IN_TIME event with the given key.
    pub fn point(&self, key: &str) -> Option<&LogEvent> {
        self.events
            .iter()
            .find(|e| e.key == key && e.event_type == EventType::PointInTime)
    }

    pub fn point_i64(&self, key: &str) -> Option<i64> {
        self.point(key).and_then(|e| e.value.as_i64())
    }

    pub fn point_str(&self, key: &str) -> Option<&str> {
        self.point(key).and_then(|e| e.value.as_str())
    }

    /// run_stop metadata.status, defaulting to "success" when absent.
    pub fn status(&self) -> &str {
        self.run_stop()
            .and_then(|e| e.metadata.get("status"))
            .and_then(Scalar::as_str)
            .unwrap_or("success")
    }
}

/// A timed span paired from INTERVAL_START / INTERVAL_END events.
/// Metadata is merged; end-event values win on key conflicts.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval {
    pub key: String,
    pub start_ms: i64,
    pub end_ms: i64,
    pub metadata: BTreeMap<String, Scalar>,
}

impl Interval {
    pub fn duration_ms(&self) -> i64 {
        self.end_ms - self.start_ms
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.start_ms <= other.start_ms && other.end_ms <= self.end_ms
    }
}

/// Parses a line stream into a [`RunLog`], attaching line numbers to
/// malformed events and rejecting streams that violate the run-log
/// invariants (missing run_start, time going backwards).
pub fn parse_run_log(reader: impl BufRead, source: impl AsRef<Path>) -> Result<RunLog> {
    let mut events = Vec::new();
    let mut prev_ms = i64::MIN;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::io(source.as_ref(), e))?;
        let event = match parse_log_line(&line) {
            Ok(None) => continue,
            Ok(Some(e)) => e,
            Err(Error::MalformedEvent { reason, .. }) => {
                return Err(Error::MalformedEvent { line: lineno, reason })
            }
            Err(e) => return Err(e),
        };
        if event.time_ms < prev_ms {
            return Err(Error::NonMonotonicTime { line: lineno });
        }
        prev_ms = event.time_ms;
        events.push(event);
    }
    RunLog::new(events, source.as_ref())
}

/// Matches the i-th INTERVAL_START of `key` with the i-th INTERVAL_END
/// of `key`. A key absent from the run yields an empty list.
///
/// Starts are events named `<key>_start` (or `<key>` itself with type
/// INTERVAL_START); ends are `<key>_stop` (or `<key>` with type
/// INTERVAL_END), matching the recognized-key convention
/// (`epoch_start`/`epoch_stop`, `staging_start`/`staging_stop`, ...).
pub fn pair_intervals(run: &RunLog, key: &str) -> Result<Vec<Interval>> {
    let start_key = format!("{key}_start");
    let stop_key = format!("{key}_stop");
    let mut pending: std::collections::VecDeque<&LogEvent> = Default::default();
    let mut out = Vec::new();
    for e in &run.events {
        let role = match e.event_type {
            EventType::IntervalStart if e.key == key || e.key == start_key => EventType::IntervalStart,
            EventType::IntervalEnd if e.key == key || e.key == stop_key => EventType::IntervalEnd,
            _ => continue,
        };
        match role {
            EventType::IntervalStart => pending.push_back(e),
            EventType::IntervalEnd => {
                let start = pending.pop_front().ok_or_else(|| Error::UnbalancedIntervals {
                    key: key.to_string(),
                    reason: "INTERVAL_END precedes its INTERVAL_START".to_string(),
                })?;
                let mut metadata = start.metadata.clone();
                for (k, v) in &e.metadata {
                    metadata.insert(k.clone(), v.clone());
                }
                out.push(Interval {
                    key: key.to_string(),
                    start_ms: start.time_ms,
                    end_ms: e.time_ms,
                    metadata,
                });
            }
            EventType::PointInTime => {}
        }
    }
    if !pending.is_empty() {
        return Err(Error::UnbalancedIntervals {
            key: key.to_string(),
            reason: format!("{} INTERVAL_START events without a matching end", pending.len()),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn run_from(lines: &str) -> Result<RunLog> {
        parse_run_log(Cursor::new(lines), "test.txt")
    }

    #[test]
    fn parses_minimal_line() {
        let line = r#":::MLLOG {"key":"run_start","value":null,"time_ms":1000,"event_type":"INTERVAL_START","metadata":{}}"#;
        let e = parse_log_line(line).unwrap().unwrap();
        assert_eq!(e.key, "run_start");
        assert_eq!(e.time_ms, 1000);
        assert_eq!(e.event_type, EventType::IntervalStart);
        assert_eq!(e.value, Scalar::Null);
    }

    #[test]
    fn skips_non_sentinel_lines() {
        assert!(parse_log_line("some framework chatter").unwrap().is_none());
        // sentinel not at column 0 disqualifies the line
        assert!(parse_log_line(" :::MLLOG {}").unwrap().is_none());
    }

    #[test]
    fn rejects_missing_fields() {
        let err = parse_log_line(r#":::MLLOG {"key":"run_start"}"#).unwrap_err();
        assert!(matches!(err, Error::MalformedEvent { .. }));
    }

    #[test]
    fn rejects_bad_key_charset() {
        let line = r#":::MLLOG {"key":"Run Start","value":null,"time_ms":0,"event_type":"POINT_IN_TIME","metadata":{}}"#;
        assert!(matches!(
            parse_log_line(line),
            Err(Error::MalformedEvent { .. })
        ));
    }

    #[test]
    fn emit_round_trips_with_metadata() {
        let e = LogEvent::point("eval_accuracy", Scalar::Float(0.121), 5000)
            .with_meta("epoch_num", Scalar::Int(42));
        let line = emit_log_line(&e);
        assert!(line.starts_with(SENTINEL));
        let back = parse_log_line(&line).unwrap().unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn emit_keeps_empty_metadata_object() {
        let e = LogEvent::point("train_samples", Scalar::Int(100), 0);
        assert!(emit_log_line(&e).contains(r#""metadata":{}"#));
    }

    #[test]
    fn emit_payload_key_order_is_fixed() {
        let e = LogEvent::point("train_samples", Scalar::Int(100), 7);
        let line = emit_log_line(&e);
        let k = line.find("\"key\"").unwrap();
        let v = line.find("\"value\"").unwrap();
        let t = line.find("\"time_ms\"").unwrap();
        let ty = line.find("\"event_type\"").unwrap();
        let m = line.find("\"metadata\"").unwrap();
        assert!(k < v && v < t && t < ty && ty < m);
    }

    #[test]
    fn parse_run_log_collects_events() {
        let text = "\
:::MLLOG {\"key\":\"run_start\",\"value\":null,\"time_ms\":0,\"event_type\":\"INTERVAL_START\",\"metadata\":{}}
:::MLLOG {\"key\":\"epoch_start\",\"value\":null,\"time_ms\":10,\"event_type\":\"INTERVAL_START\",\"metadata\":{\"epoch_num\":1}}
:::MLLOG {\"key\":\"epoch_stop\",\"value\":null,\"time_ms\":20,\"event_type\":\"INTERVAL_END\",\"metadata\":{\"epoch_num\":1}}
noise from the scheduler
:::MLLOG {\"key\":\"epoch_start\",\"value\":null,\"time_ms\":20,\"event_type\":\"INTERVAL_START\",\"metadata\":{\"epoch_num\":2}}
:::MLLOG {\"key\":\"epoch_stop\",\"value\":null,\"time_ms\":35,\"event_type\":\"INTERVAL_END\",\"metadata\":{\"epoch_num\":2}}
:::MLLOG {\"key\":\"run_stop\",\"value\":null,\"time_ms\":40,\"event_type\":\"INTERVAL_END\",\"metadata\":{\"status\":\"success\"}}
";
        let run = run_from(text).unwrap();
        assert_eq!(run.events.len(), 6);
    }

    #[test]
    fn parse_run_log_requires_run_start() {
        let text = ":::MLLOG {\"key\":\"run_stop\",\"value\":null,\"time_ms\":1,\"event_type\":\"INTERVAL_END\",\"metadata\":{}}\n";
        assert!(matches!(run_from(text), Err(Error::MissingRunStart)));
    }

    #[test]
    fn parse_run_log_reports_line_of_malformed_event() {
        let text = "\
:::MLLOG {\"key\":\"run_start\",\"value\":null,\"time_ms\":0,\"event_type\":\"INTERVAL_START\",\"metadata\":{}}
chatter
:::MLLOG {broken
";
        match run_from(text) {
            Err(Error::MalformedEvent { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected MalformedEvent, got {other:?}"),
        }
    }

    #[test]
    fn parse_run_log_rejects_time_going_backwards() {
        let text = "\
:::MLLOG {\"key\":\"run_start\",\"value\":null,\"time_ms\":100,\"event_type\":\"INTERVAL_START\",\"metadata\":{}}
:::MLLOG {\"key\":\"eval_start\",\"value\":null,\"time_ms\":99,\"event_type\":\"INTERVAL_START\",\"metadata\":{}}
";
        assert!(matches!(run_from(text), Err(Error::NonMonotonicTime { line: 2 })));
    }

    #[test]
    fn equal_timestamps_are_allowed() {
        let text = "\
:::MLLOG {\"key\":\"run_start\",\"value\":null,\"time_ms\":5,\"event_type\":\"INTERVAL_START\",\"metadata\":{}}
:::MLLOG {\"key\":\"train_samples\",\"value\":10,\"time_ms\":5,\"event_type\":\"POINT_IN_TIME\",\"metadata\":{}}
";
        assert!(run_from(text).is_ok());
    }

    #[test]
    fn pairs_intervals_in_order() {
        let events = vec![
            LogEvent::start("run_start", 0),
            LogEvent::start("epoch_start", 0),
            LogEvent::end("epoch_stop", 10),
            LogEvent::start("epoch_start", 10),
            LogEvent::end("epoch_stop", 25),
        ];
        let run = RunLog::new(events, "mem").unwrap();
        let spans = pair_intervals(&run, "epoch").unwrap();
        assert_eq!(
            spans.iter().map(|s| (s.start_ms, s.end_ms)).collect::<Vec<_>>(),
            vec![(0, 10), (10, 25)]
        );
    }

    #[test]
    fn absent_key_gives_empty_list() {
        let run = RunLog::new(vec![LogEvent::start("run_start", 0)], "mem").unwrap();
        assert!(pair_intervals(&run, "staging").unwrap().is_empty());
    }

    #[test]
    fn unbalanced_intervals_are_rejected() {
        let run = RunLog::new(
            vec![LogEvent::start("run_start", 0), LogEvent::start("epoch", 1)],
            "mem",
        )
        .unwrap();
        assert!(matches!(
            pair_intervals(&run, "epoch"),
            Err(Error::UnbalancedIntervals { .. })
        ));
        let run = RunLog::new(
            vec![LogEvent::start("run_start", 0), LogEvent::end("epoch", 1)],
            "mem",
        )
        .unwrap();
        assert!(matches!(
            pair_intervals(&run, "epoch"),
            Err(Error::UnbalancedIntervals { .. })
        ));
    }

    #[test]
    fn interval_metadata_end_wins() {
        let events = vec![
            LogEvent::start("run_start", 0),
            LogEvent::start("eval", 1).with_meta("epoch_num", Scalar::Int(1)),
            LogEvent::end("eval", 2)
                .with_meta("epoch_num", Scalar::Int(2))
                .with_meta("status", Scalar::Str("ok".into())),
        ];
        let run = RunLog::new(events, "mem").unwrap();
        let spans = pair_intervals(&run, "eval").unwrap();
        assert_eq!(spans[0].metadata["epoch_num"], Scalar::Int(2));
        assert_eq!(spans[0].metadata["status"], Scalar::Str("ok".into()));
    }
}
