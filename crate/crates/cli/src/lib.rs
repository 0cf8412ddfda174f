//! Command-line experiment runner over `biosim-core`.

// `!(x > 0.0)` guards are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// numerical kernels index several parallel arrays at once
#![allow(clippy::needless_range_loop)]

pub mod config;
pub mod error;
pub mod experiments;
pub mod output;

pub use config::ExperimentConfig;
pub use error::CliError;
pub use experiments::{experiment_names, run, run_in_memory};
pub use output::RunSummary;
