//! The operations behind each CLI subcommand, callable from library code.
//!
//! Every command writes its files below the output directory (the config's
//! `output`, redirected by `LCAM_OUTPUT_DIR` when set) and returns what it
//! wrote so callers can print or inspect it.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::landscapes::LandscapeId;

use super::config::{load_config, parse_config, ExperimentConfig};
use super::gradcheck::{grad_check, GradCheckRow};
use super::preset::{four_group, preset_threshold};
use super::report::{compare_runs, ComparisonReport, LabeledTrace};
use super::runner::{run_all, run_experiment, RunOutcome};
use super::sweep::expand_sweep;
use super::trace::{read_trace_csv, write_trace_csv};

/// A finished run and the files it produced.
#[derive(Debug, Clone)]
pub struct WrittenRun {
    pub outcome: RunOutcome,
    pub trace_path: PathBuf,
    pub config_path: PathBuf,
}

/// `<stem>.config.toml` next to a trace. `compare` reads it to learn which
/// problem a trace belongs to.
pub fn sidecar_path(trace_path: &Path) -> PathBuf {
    let stem = trace_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "trace".into());
    trace_path.with_file_name(format!("{stem}.config.toml"))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Write the trace (partial if the run diverged) and the config sidecar.
pub fn persist(config: &ExperimentConfig, outcome: RunOutcome) -> Result<WrittenRun> {
    let trace_path = config.resolved_output();
    write_trace_csv(&outcome.records, &trace_path)?;
    let config_path = sidecar_path(&trace_path);
    write_text(&config_path, &config.to_toml())?;
    Ok(WrittenRun {
        outcome,
        trace_path,
        config_path,
    })
}

/// `run <config>`
pub fn run_command(config_path: impl AsRef<Path>) -> Result<WrittenRun> {
    let config = load_config(config_path)?;
    let outcome = run_experiment(&config)?;
    persist(&config, outcome)
}

fn run_and_persist(configs: &[ExperimentConfig]) -> Result<Vec<WrittenRun>> {
    run_all(configs)
        .into_iter()
        .zip(configs)
        .map(|(outcome, config)| persist(config, outcome?))
        .collect()
}

/// Load a trace for comparison, labelled by its file stem. The problem comes
/// from the sidecar config when there is one.
pub fn load_labeled_trace(path: impl AsRef<Path>) -> Result<LabeledTrace> {
    let path = path.as_ref();
    let records = read_trace_csv(path)?;
    let sidecar = sidecar_path(path);
    let problem = if sidecar.exists() {
        let text = std::fs::read_to_string(&sidecar).map_err(|e| Error::io(&sidecar, e))?;
        Some(parse_config(&text)?.problem.id().to_string())
    } else {
        None
    };
    Ok(LabeledTrace {
        label: path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
        problem,
        records,
    })
}

/// `compare <trace...> [--threshold]`
pub fn compare_command<P: AsRef<Path>>(
    paths: &[P],
    threshold: Option<f64>,
) -> Result<ComparisonReport> {
    let traces = paths
        .iter()
        .map(load_labeled_trace)
        .collect::<Result<Vec<_>>>()?;
    compare_runs(&traces, threshold)
}

/// `grad-check [--landscape id]`, 20 points per target.
pub fn grad_check_command(landscape: Option<&str>) -> Result<Vec<GradCheckRow>> {
    let only = landscape.map(str::parse::<LandscapeId>).transpose()?;
    grad_check(only, 20, 0)
}

/// `sweep <config> --param key --values list`
pub fn sweep_command(
    config_path: impl AsRef<Path>,
    key: &str,
    values: &[String],
) -> Result<Vec<WrittenRun>> {
    let base = load_config(config_path)?;
    run_and_persist(&expand_sweep(&base, key, values)?)
}

#[derive(Debug, Clone)]
pub struct PresetResult {
    pub runs: Vec<WrittenRun>,
    pub report: ComparisonReport,
    pub report_path: PathBuf,
}

/// `preset four-group --problem id`: run the four groups in parallel, then
/// write `four-group/<problem>/report.csv`.
pub fn four_group_command(problem: &str, seed: u64) -> Result<PresetResult> {
    let configs = four_group(problem, seed)?;
    let runs = run_and_persist(&configs)?;
    let traces: Vec<LabeledTrace> = runs
        .iter()
        .map(|r| LabeledTrace {
            label: r.outcome.name.clone(),
            problem: Some(r.outcome.problem.to_string()),
            records: r.outcome.records.clone(),
        })
        .collect();
    let report = compare_runs(&traces, preset_threshold(problem))?;
    let report_path = runs[0].trace_path.with_file_name("report.csv");
    let mut buf = Vec::new();
    report.write_csv(&mut buf)?;
    write_text(
        &report_path,
        &String::from_utf8(buf).expect("report is utf-8"),
    )?;
    Ok(PresetResult {
        runs,
        report,
        report_path,
    })
}
