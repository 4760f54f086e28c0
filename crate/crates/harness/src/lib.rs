//! Experiment runner for `gcg-core`: TOML configs in, bit-exact CSV traces,
//! plot data and audit reports out.

pub mod commands;
pub mod config;
pub mod trace;

pub use commands::{cmd_audit, cmd_bench, cmd_solve, Options, RunSummary};
pub use config::{ConfigError, ExperimentConfig, Fixture};
