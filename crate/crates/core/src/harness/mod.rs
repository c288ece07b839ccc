//! Config-driven experiments: run, trace, sweep, compare.

mod commands;
mod config;
mod dataset_csv;
mod engine;
mod gradcheck;
mod preset;
mod report;
mod runner;
mod sweep;
mod trace;

pub use commands::{
    compare_command, four_group_command, grad_check_command, load_labeled_trace, persist,
    run_command, sidecar_path, sweep_command, PresetResult, WrittenRun,
};
pub use config::{
    load_config, parse_config, BuiltProblem, ExperimentConfig, OptimizerConfig, ProblemConfig,
    ScheduleConfig, TrackerConfig, OUTPUT_DIR_ENV,
};
pub use dataset_csv::{load_csv_dataset, read_csv_dataset, save_csv_dataset, write_csv_dataset};
pub use engine::{Engine, StepInfo};
pub use gradcheck::{
    check_landscape, check_mlp, grad_check, GradCheckRow, FD_STEP, LANDSCAPE_REL_TOL, MLP_REL_TOL,
    SCALE_FLOOR,
};
pub use preset::{base_config, four_group, preset_threshold, FOUR_GROUP_LABELS, PRESET_PROBLEMS};
pub use report::{
    compare_runs, iterations_to_threshold, phase_occupancy, summarize, ComparisonReport,
    LabeledTrace, SummaryRow,
};
pub use runner::{run_all, run_experiment, RunOutcome, RunStatus};
pub use sweep::expand_sweep;
pub use trace::{
    fmt_real, read_trace, read_trace_csv, write_trace, write_trace_csv, TraceRecord, TRACE_HEADER,
};
