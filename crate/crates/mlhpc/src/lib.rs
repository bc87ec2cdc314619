//! Toolkit for large-scale ML training benchmark submissions:
//! structured log parsing, rule checking, official time-to-train
//! scoring, performance decomposition and scaling analysis, run
//! variability statistics, bandwidth/I-O characterization, and a
//! deterministic synthetic-submission generator for testing.
//!
//! Start with the `examples/` directory: each capability has a small
//! runnable example. The `mlhpc` binary wraps the same functionality
//! as `validate`, `score`, `analyze`, `predict`, `characterize` and
//! `synth` subcommands.

pub mod analysis;
pub mod characterization;
pub mod cli;
pub mod compliance;
pub mod error;
pub mod mllog;
pub mod perfmodel;
pub mod scoring;
pub mod stats;
pub mod submission;
pub mod svg;
pub mod synth;

pub use error::{Error, Result};
