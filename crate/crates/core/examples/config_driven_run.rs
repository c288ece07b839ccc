//! Parse a config, run it, write the trace and compare against a second run
//! that differs only in its momentum.
//!
//! cargo run --release --example config_driven_run
//! (set LCAM_OUTPUT_DIR to choose where the traces land)

use lcam::harness::{
    compare_runs, parse_config, persist, run_experiment, LabeledTrace, OptimizerConfig,
};

const CONFIG: &str = r#"
name = "blobs-lcam"
seed = 11
epochs = 40
output = "runs/blobs-lcam.csv"

[problem]
kind = "blobs"
classes = 4
per_class = 60
spread = 0.8

[optimizer]
kind = "lcam"
beta_sparse = 0.95
beta_nonsparse = 0.9

[schedule]
kind = "step_drop"
base_lr = 0.05
drop_epochs = [20, 30]
factor = 0.2
"#;

fn main() -> lcam::Result<()> {
    let lcam_config = parse_config(CONFIG)?;
    let mut sgd_config = lcam_config.clone();
    sgd_config.name = "blobs-sgd".into();
    sgd_config.output = "runs/blobs-sgd.csv".into();
    sgd_config.optimizer = OptimizerConfig::Sgd {
        beta: 0.9,
        weight_decay: 5e-4,
    };

    let mut traces = Vec::new();
    for config in [lcam_config, sgd_config] {
        let written = persist(&config, run_experiment(&config)?)?;
        println!("{} -> {}", config.name, written.trace_path.display());
        traces.push(LabeledTrace {
            label: config.name.clone(),
            problem: Some(written.outcome.problem.to_string()),
            records: written.outcome.records,
        });
    }
    print!("{}", compare_runs(&traces, Some(0.3))?);
    Ok(())
}
