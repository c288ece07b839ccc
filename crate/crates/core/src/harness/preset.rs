//! The four-group momentum comparison as ready-made configs.
//!
//! Every group shares problem, seed and a step-drop schedule (drops at epochs
//! 30, 60 and 90 to 20%, 150 epochs) and differs only in momentum:
//!
//! | label             | β in sparse phase | β in non-sparse phase |
//! |-------------------|-------------------|-----------------------|
//! | `fixed-0.9`       | 0.9               | 0.9                   |
//! | `fixed-0.95`      | 0.95              | 0.95                  |
//! | `sparse-accel`    | 0.95              | 0.9                   |
//! | `nonsparse-accel` | 0.9               | 0.95                  |

use std::path::PathBuf;

use crate::error::{Error, Result};

use super::config::{
    ExperimentConfig, OptimizerConfig, ProblemConfig, ScheduleConfig, TrackerConfig,
};

pub const FOUR_GROUP_LABELS: [&str; 4] =
    ["fixed-0.9", "fixed-0.95", "sparse-accel", "nonsparse-accel"];

pub const PRESET_PROBLEMS: [&str; 6] = [
    "coupled-spring",
    "quadratic",
    "saddle",
    "rosenbrock",
    "two-moons",
    "blobs",
];

const EPOCHS: u64 = 150;

fn step_drop(base_lr: f64) -> ScheduleConfig {
    ScheduleConfig::StepDrop {
        base_lr,
        drop_epochs: vec![30, 60, 90],
        factor: 0.2,
    }
}

/// Shared part of the four configs for `problem`.
pub fn base_config(problem: &str, seed: u64) -> Result<ExperimentConfig> {
    let landscape = |problem: ProblemConfig, base_lr: f64, grad_noise: f64| ExperimentConfig {
        name: String::new(),
        seed,
        epochs: EPOCHS,
        iterations_per_epoch: 20,
        grad_noise,
        start: None,
        batch_size: 32,
        hidden: vec![16, 16],
        output: PathBuf::new(),
        problem,
        optimizer: OptimizerConfig::Sgd {
            beta: 0.9,
            weight_decay: 0.0,
        },
        schedule: step_drop(base_lr),
        tracker: TrackerConfig::Window { size: None },
    };
    // dataset runs follow the image-classification protocol: lr 0.1, λ = 5e-4
    let dataset = |problem: ProblemConfig| ExperimentConfig {
        optimizer: OptimizerConfig::Sgd {
            beta: 0.9,
            weight_decay: 5e-4,
        },
        ..landscape(problem, 0.1, 0.0)
    };
    let config = match problem {
        "coupled-spring" => landscape(
            ProblemConfig::CoupledSpring {
                pairs: 5,
                stiff_scale: 4.0,
                soft_scale: 1.0,
                coupling: 1.5,
                s_center: 1.0,
                n_center: -1.0,
            },
            0.01,
            0.1,
        ),
        "quadratic" => landscape(
            ProblemConfig::Quadratic {
                scales: vec![1.0, 100.0],
            },
            0.001,
            1.0,
        ),
        "saddle" => landscape(ProblemConfig::Saddle { dimension: 2 }, 0.01, 0.01),
        "rosenbrock" => landscape(ProblemConfig::Rosenbrock { dimension: 2 }, 0.0002, 0.1),
        "two-moons" => dataset(ProblemConfig::TwoMoons { n: 500, noise: 0.1 }),
        "blobs" => dataset(ProblemConfig::Blobs {
            classes: 10,
            per_class: 50,
            spread: 0.5,
        }),
        other => {
            return Err(Error::config(
                "problem",
                format!(
                    "no preset for `{other}`; available: {}",
                    PRESET_PROBLEMS.join(", ")
                ),
            ))
        }
    };
    Ok(config)
}

/// The four momentum groups for `problem`, writing to
/// `four-group/<problem>/<label>.csv`.
pub fn four_group(problem: &str, seed: u64) -> Result<Vec<ExperimentConfig>> {
    let base = base_config(problem, seed)?;
    let weight_decay = match base.optimizer {
        OptimizerConfig::Sgd { weight_decay, .. } => weight_decay,
        _ => 0.0,
    };
    let optimizers = [
        OptimizerConfig::Sgd {
            beta: 0.9,
            weight_decay,
        },
        OptimizerConfig::Sgd {
            beta: 0.95,
            weight_decay,
        },
        OptimizerConfig::Lcam {
            beta_sparse: 0.95,
            beta_nonsparse: 0.9,
            weight_decay,
        },
        OptimizerConfig::Lcam {
            beta_sparse: 0.9,
            beta_nonsparse: 0.95,
            weight_decay,
        },
    ];
    Ok(FOUR_GROUP_LABELS
        .iter()
        .zip(optimizers)
        .map(|(label, optimizer)| ExperimentConfig {
            name: (*label).to_string(),
            output: PathBuf::from("four-group")
                .join(problem)
                .join(format!("{label}.csv")),
            optimizer,
            ..base.clone()
        })
        .collect())
}

/// Loss threshold for the preset's iterations-to-threshold column.
pub fn preset_threshold(problem: &str) -> Option<f64> {
    match problem {
        // 1% of the loss at the origin
        "coupled-spring" => Some(0.05),
        _ => None,
    }
}
