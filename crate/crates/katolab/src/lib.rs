//! Campaign runner, reports and command-line front end for `katolab-core`.

pub mod oracle;
pub mod plan;
pub mod report;
pub mod runner;

pub use oracle::{run_oracle, OracleReport};
pub use plan::TrialPlan;
pub use report::{Aggregate, ErrorRecord, Record, Report};
pub use runner::{alpha_profile, run_sweep, run_verify, SweepAxis, SweepRow, SweepTable};

/// Configuration, IO and output failures. Exit status 1.
#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("CSV output: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] katolab_core::Error),
}

/// Exit statuses of the `katolab` binary.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CONFIG: i32 = 1;
    pub const TOLERANCE: i32 = 2;
    pub const VIOLATION: i32 = 3;
}
