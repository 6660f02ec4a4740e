//! Configuration, experiment execution, verification suites, sweeps, and
//! structured output.

pub mod config;
pub mod runner;
pub mod sweep;
pub mod verify;

pub use config::{ExperimentConfig, InnerCount, Setting, StartPoint};
pub use runner::{run, run_to_dir, RoundRecord, SummaryReport};
pub use sweep::{sweep, SweepCell};
pub use verify::{run_suite, CheckResult, SuiteResult, SUITE_NAMES};
