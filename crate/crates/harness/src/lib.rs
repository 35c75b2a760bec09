//! Experiment orchestration for the multi-objective DaE planner: configs,
//! single runs, campaigns, aggregation and signed-rank statistics.

mod aggregate;
mod campaign;
mod config;
mod error;
mod run;
mod stats;

pub use aggregate::{
    aggregate, load_runs, read_attainment, read_trace, Aggregate, AttainmentRow, HypervolumeRow, RunRecord,
};
pub use campaign::{
    metadata_json, read_summary, run_campaign, run_dir, run_experiment, worker_count, write_run, RunOutcome,
    WORKERS_ENV,
};
pub use config::{load_config, DaeSettings, ExperimentConfig, InstanceSpec, MoeaSettings, StopCriterion};
pub use error::HarnessError;
pub use run::{reference_front, run_single, Experiment, RunResult, TracePoint};
pub use stats::{comparison_table, wilcoxon_signed_rank, Direction, WilcoxonResult, ALPHA, EXACT_LIMIT};
