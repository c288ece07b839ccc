//! Sweep the non-sparse momentum of an LCAM run on the noisy coupled spring
//! and compare iterations-to-threshold.
//!
//! cargo run --release --example momentum_sweep

use lcam::harness::{compare_runs, expand_sweep, parse_config, run_all, LabeledTrace};

const BASE: &str = r#"
name = "spring"
epochs = 40
iterations_per_epoch = 20
grad_noise = 0.1
output = "runs/sweep/spring.csv"

[problem]
kind = "coupled_spring"

[optimizer]
kind = "lcam"
beta_sparse = 0.9
weight_decay = 0.0

[schedule]
kind = "constant"
lr = 0.01
"#;

fn main() -> lcam::Result<()> {
    let base = parse_config(BASE)?;
    let values: Vec<String> = ["0.8", "0.9", "0.95", "0.99"].map(String::from).to_vec();
    let configs = expand_sweep(&base, "optimizer.beta_nonsparse", &values)?;
    let traces = run_all(&configs)
        .into_iter()
        .zip(&configs)
        .map(|(outcome, config)| {
            let outcome = outcome?;
            Ok(LabeledTrace {
                label: config.name.clone(),
                problem: Some(outcome.problem.to_string()),
                records: outcome.records,
            })
        })
        .collect::<lcam::Result<Vec<_>>>()?;
    print!("{}", compare_runs(&traces, Some(0.05))?);
    Ok(())
}
