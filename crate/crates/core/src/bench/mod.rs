//! Experiment runner: baseline versus filtered solves, speedup and MLU
//! deterioration metrics, CSV reports.

mod config;
mod record;
mod runner;

pub use config::{CapacityModel, ExperimentConfig, Mode, SyntheticSpec};
pub use record::{compute_metrics, emit_report, median, read_report, write_report, BenchmarkRecord, Metrics, REPORT_HEADER};
pub use runner::{run_benchmark, run_benchmark_with, SolveEvent, SKIPPED_CONFIG};
