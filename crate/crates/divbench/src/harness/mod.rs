//! Experiment configuration, replicated deterministic runs, aggregation,
//! and file output.

mod config;
mod output;
mod runner;

pub use config::{default_output_dir, parse_config_file, ExperimentConfig, Overrides};
pub use output::{write_generation_csv, write_summary, SummaryMeta};
pub use runner::{
    aggregate_runs, run_replicated, run_single, AggregateResult, ExperimentOutcome,
    GenerationMeans,
};
