//! Experiment configuration: a strict TOML schema.
//!
//! Unknown keys are rejected at every level. Every optional field has a
//! default, and [`ExperimentConfig::to_toml`] writes all of them out, so a
//! serialized config records exactly what was run.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::landscapes::{
    CoupledSpring, CoupledSpringParams, Landscape, Quadratic, Rosenbrock, Saddle,
};
use crate::optimizers::{LcamConfig, TrackerMode};
use crate::schedules::{DecayMode, ScheduleKind};
use crate::tinynet::{generate_blobs, generate_two_moons, Dataset};

use super::dataset_csv::load_csv_dataset;

/// Environment variable that, when set, redirects every trace into this directory.
pub const OUTPUT_DIR_ENV: &str = "LCAM_OUTPUT_DIR";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Label used in reports.
    #[serde(default = "defaults::name")]
    pub name: String,
    /// Run seed, in `[0, 2^63)` so it fits a TOML integer.
    #[serde(default)]
    pub seed: u64,
    pub epochs: u64,
    /// Landscape problems only.
    #[serde(default = "defaults::iterations_per_epoch")]
    pub iterations_per_epoch: u64,
    /// Landscape problems only: standard deviation of Gaussian noise added to
    /// every gradient coordinate.
    #[serde(default)]
    pub grad_noise: f64,
    /// Landscape problems only: starting point, defaults to the landscape's own.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<Vec<f64>>,
    /// Dataset problems only.
    #[serde(default = "defaults::batch_size")]
    pub batch_size: usize,
    /// Dataset problems only: hidden layer widths of the MLP.
    #[serde(default = "defaults::hidden")]
    pub hidden: Vec<usize>,
    #[serde(default = "defaults::output")]
    pub output: PathBuf,
    pub problem: ProblemConfig,
    pub optimizer: OptimizerConfig,
    pub schedule: ScheduleConfig,
    #[serde(default)]
    pub tracker: TrackerConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProblemConfig {
    Quadratic {
        #[serde(default = "defaults::scales")]
        scales: Vec<f64>,
    },
    Saddle {
        #[serde(default = "defaults::dimension")]
        dimension: usize,
    },
    Rosenbrock {
        #[serde(default = "defaults::dimension")]
        dimension: usize,
    },
    CoupledSpring {
        #[serde(default = "defaults::pairs")]
        pairs: usize,
        #[serde(default = "defaults::stiff_scale")]
        stiff_scale: f64,
        #[serde(default = "defaults::soft_scale")]
        soft_scale: f64,
        #[serde(default = "defaults::coupling")]
        coupling: f64,
        #[serde(default = "defaults::s_center")]
        s_center: f64,
        #[serde(default = "defaults::n_center")]
        n_center: f64,
    },
    TwoMoons {
        #[serde(default = "defaults::moons_n")]
        n: usize,
        #[serde(default = "defaults::moons_noise")]
        noise: f64,
    },
    Blobs {
        #[serde(default = "defaults::classes")]
        classes: usize,
        #[serde(default = "defaults::per_class")]
        per_class: usize,
        #[serde(default = "defaults::spread")]
        spread: f64,
    },
    Csv {
        path: PathBuf,
        /// Number of classes; labels must be below it. Inferred as
        /// `max label + 1` when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        classes: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum OptimizerConfig {
    Sgd {
        #[serde(default = "defaults::beta")]
        beta: f64,
        #[serde(default = "defaults::weight_decay")]
        weight_decay: f64,
    },
    Lcam {
        #[serde(default = "defaults::beta")]
        beta_sparse: f64,
        #[serde(default = "defaults::beta_nonsparse")]
        beta_nonsparse: f64,
        #[serde(default = "defaults::weight_decay")]
        weight_decay: f64,
    },
    Adagrad {
        #[serde(default = "defaults::eps")]
        eps: f64,
    },
    Adam {
        #[serde(default = "defaults::beta")]
        beta1: f64,
        #[serde(default = "defaults::beta2")]
        beta2: f64,
        #[serde(default = "defaults::eps")]
        eps: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ScheduleConfig {
    Constant {
        lr: f64,
    },
    StepDrop {
        #[serde(default = "defaults::base_lr")]
        base_lr: f64,
        #[serde(default = "defaults::drop_epochs")]
        drop_epochs: Vec<u64>,
        #[serde(default = "defaults::factor")]
        factor: f64,
    },
    PerIterationDecay {
        #[serde(default = "defaults::base_lr")]
        base_lr: f64,
        #[serde(default = "defaults::warmup_epochs")]
        warmup_epochs: u64,
        #[serde(default = "defaults::decay")]
        decay: f64,
        /// Multiply once per iteration instead of exponentiating.
        #[serde(default)]
        iterative: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum TrackerConfig {
    Cumulative {},
    /// Sliding window; `size` defaults to the iterations per epoch.
    Window {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        size: Option<usize>,
    },
    Ema {
        alpha: f64,
    },
}

impl Default for TrackerConfig {
    fn default() -> Self {
        TrackerConfig::Window { size: None }
    }
}

mod defaults {
    use std::path::PathBuf;

    pub fn name() -> String {
        "run".into()
    }
    pub fn iterations_per_epoch() -> u64 {
        100
    }
    pub fn batch_size() -> usize {
        32
    }
    pub fn hidden() -> Vec<usize> {
        vec![16, 16]
    }
    pub fn output() -> PathBuf {
        "trace.csv".into()
    }
    pub fn scales() -> Vec<f64> {
        vec![1.0, 100.0]
    }
    pub fn dimension() -> usize {
        2
    }
    pub fn pairs() -> usize {
        5
    }
    pub fn stiff_scale() -> f64 {
        4.0
    }
    pub fn soft_scale() -> f64 {
        1.0
    }
    pub fn coupling() -> f64 {
        1.5
    }
    pub fn s_center() -> f64 {
        1.0
    }
    pub fn n_center() -> f64 {
        -1.0
    }
    pub fn moons_n() -> usize {
        500
    }
    pub fn moons_noise() -> f64 {
        0.1
    }
    pub fn classes() -> usize {
        10
    }
    pub fn per_class() -> usize {
        50
    }
    pub fn spread() -> f64 {
        0.5
    }
    pub fn beta() -> f64 {
        0.9
    }
    pub fn beta_nonsparse() -> f64 {
        0.95
    }
    pub fn beta2() -> f64 {
        0.999
    }
    pub fn weight_decay() -> f64 {
        5e-4
    }
    pub fn eps() -> f64 {
        1e-8
    }
    pub fn base_lr() -> f64 {
        0.1
    }
    pub fn drop_epochs() -> Vec<u64> {
        vec![30, 60, 90]
    }
    pub fn factor() -> f64 {
        0.2
    }
    pub fn warmup_epochs() -> u64 {
        30
    }
    pub fn decay() -> f64 {
        0.99985
    }
}

fn unit_open(key: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::config(key, format!("must lie in (0, 1), got {v}")))
    }
}

fn positive(key: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::config(
            key,
            format!("must be positive and finite, got {v}"),
        ))
    }
}

fn nonnegative(key: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::config(
            key,
            format!("must be non-negative and finite, got {v}"),
        ))
    }
}

/// What a problem needs from the run loop.
pub enum BuiltProblem {
    Landscape(Box<dyn Landscape>),
    Dataset(Dataset),
}

impl ProblemConfig {
    /// Short identifier used to check that compared runs solved the same problem.
    pub fn id(&self) -> &'static str {
        match self {
            ProblemConfig::Quadratic { .. } => "quadratic",
            ProblemConfig::Saddle { .. } => "saddle",
            ProblemConfig::Rosenbrock { .. } => "rosenbrock",
            ProblemConfig::CoupledSpring { .. } => "coupled-spring",
            ProblemConfig::TwoMoons { .. } => "two-moons",
            ProblemConfig::Blobs { .. } => "blobs",
            ProblemConfig::Csv { .. } => "csv",
        }
    }

    pub fn is_dataset(&self) -> bool {
        matches!(
            self,
            ProblemConfig::TwoMoons { .. }
                | ProblemConfig::Blobs { .. }
                | ProblemConfig::Csv { .. }
        )
    }

    fn landscape(&self) -> Result<Option<Box<dyn Landscape>>> {
        let keyed = |e: Error| match e {
            Error::Config { key, reason } => Error::config(format!("problem.{key}"), reason),
            other => other,
        };
        let built: Box<dyn Landscape> = match self {
            ProblemConfig::Quadratic { scales } => {
                Box::new(Quadratic::new(scales.clone()).map_err(keyed)?)
            }
            ProblemConfig::Saddle { dimension } => {
                Box::new(Saddle::new(*dimension).map_err(keyed)?)
            }
            ProblemConfig::Rosenbrock { dimension } => {
                Box::new(Rosenbrock::new(*dimension).map_err(keyed)?)
            }
            ProblemConfig::CoupledSpring {
                pairs,
                stiff_scale,
                soft_scale,
                coupling,
                s_center,
                n_center,
            } => Box::new(
                CoupledSpring::new(CoupledSpringParams {
                    stiff_scale: *stiff_scale,
                    soft_scale: *soft_scale,
                    coupling: *coupling,
                    group_split: *pairs,
                    s_center: *s_center,
                    n_center: *n_center,
                })
                .map_err(|e| match e {
                    Error::Config { key, reason } if key == "group_split" => {
                        Error::config("problem.pairs", reason)
                    }
                    other => keyed(other),
                })?,
            ),
            _ => return Ok(None),
        };
        Ok(Some(built))
    }

    /// Instantiate the landscape or generate/load the dataset.
    pub fn build(&self, seed: u64) -> Result<BuiltProblem> {
        if let Some(l) = self.landscape()? {
            return Ok(BuiltProblem::Landscape(l));
        }
        let keyed = |e: Error| match e {
            Error::Config { key, reason } => Error::config(format!("problem.{key}"), reason),
            other => other,
        };
        let data = match self {
            ProblemConfig::TwoMoons { n, noise } => {
                generate_two_moons(*n, *noise, seed).map_err(keyed)?
            }
            ProblemConfig::Blobs {
                classes,
                per_class,
                spread,
            } => generate_blobs(*classes, *per_class, *spread, seed).map_err(keyed)?,
            ProblemConfig::Csv { path, classes } => load_csv_dataset(path, *classes, seed)?,
            _ => unreachable!("landscapes handled above"),
        };
        Ok(BuiltProblem::Dataset(data))
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        match *self {
            OptimizerConfig::Sgd { beta, weight_decay } => {
                unit_open("optimizer.beta", beta)?;
                nonnegative("optimizer.weight_decay", weight_decay)
            }
            OptimizerConfig::Lcam {
                beta_sparse,
                beta_nonsparse,
                weight_decay,
            } => {
                unit_open("optimizer.beta_sparse", beta_sparse)?;
                unit_open("optimizer.beta_nonsparse", beta_nonsparse)?;
                nonnegative("optimizer.weight_decay", weight_decay)
            }
            OptimizerConfig::Adagrad { eps } => positive("optimizer.eps", eps),
            OptimizerConfig::Adam { beta1, beta2, eps } => {
                unit_open("optimizer.beta1", beta1)?;
                unit_open("optimizer.beta2", beta2)?;
                positive("optimizer.eps", eps)
            }
        }
    }

    pub fn lcam(&self) -> Option<LcamConfig> {
        match *self {
            OptimizerConfig::Lcam {
                beta_sparse,
                beta_nonsparse,
                weight_decay,
            } => LcamConfig::new(beta_sparse, beta_nonsparse, weight_decay).ok(),
            _ => None,
        }
    }
}

impl ScheduleConfig {
    pub fn to_kind(&self) -> ScheduleKind {
        match self {
            ScheduleConfig::Constant { lr } => ScheduleKind::Constant { lr: *lr },
            ScheduleConfig::StepDrop {
                base_lr,
                drop_epochs,
                factor,
            } => ScheduleKind::StepDrop {
                base_lr: *base_lr,
                drop_epochs: drop_epochs.clone(),
                factor: *factor,
            },
            ScheduleConfig::PerIterationDecay {
                base_lr,
                warmup_epochs,
                decay,
                iterative,
            } => ScheduleKind::PerIterationDecay {
                base_lr: *base_lr,
                warmup_epochs: *warmup_epochs,
                decay: *decay,
                mode: if *iterative {
                    DecayMode::Iterative
                } else {
                    DecayMode::ClosedForm
                },
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.to_kind().validate().map_err(|e| match e {
            Error::Config { key, reason } => Error::config(format!("schedule.{key}"), reason),
            other => other,
        })
    }
}

impl TrackerConfig {
    /// Resolve the tracker mode given the run's iterations per epoch.
    pub fn mode(&self, iterations_per_epoch: u64) -> TrackerMode {
        match *self {
            TrackerConfig::Cumulative {} => TrackerMode::Cumulative,
            TrackerConfig::Window { size } => {
                TrackerMode::Window(size.unwrap_or(iterations_per_epoch as usize))
            }
            TrackerConfig::Ema { alpha } => TrackerMode::Ema(alpha),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            TrackerConfig::Cumulative {} | TrackerConfig::Window { size: None } => Ok(()),
            TrackerConfig::Window { size: Some(0) } => Err(Error::config(
                "tracker.size",
                "window must hold at least one loss",
            )),
            TrackerConfig::Window { .. } => Ok(()),
            TrackerConfig::Ema { alpha } if alpha > 0.0 && alpha <= 1.0 => Ok(()),
            TrackerConfig::Ema { alpha } => Err(Error::config(
                "tracker.alpha",
                format!("must lie in (0, 1], got {alpha}"),
            )),
        }
    }
}

impl ExperimentConfig {
    /// Range and consistency checks beyond what the schema enforces.
    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(Error::config("name", "must not be empty"));
        }
        if self.seed > i64::MAX as u64 {
            return Err(Error::config("seed", "must be below 2^63"));
        }
        if self.epochs == 0 {
            return Err(Error::config("epochs", "must be positive"));
        }
        if self.iterations_per_epoch == 0 {
            return Err(Error::config("iterations_per_epoch", "must be positive"));
        }
        nonnegative("grad_noise", self.grad_noise)?;
        if self.batch_size == 0 {
            return Err(Error::config("batch_size", "must be positive"));
        }
        if self.hidden.contains(&0) {
            return Err(Error::config("hidden", "layer widths must be positive"));
        }
        if self.output.as_os_str().is_empty() {
            return Err(Error::config("output", "must not be empty"));
        }
        self.optimizer.validate()?;
        self.schedule.validate()?;
        self.tracker.validate()?;
        self.validate_problem()
    }

    fn validate_problem(&self) -> Result<()> {
        match &self.problem {
            ProblemConfig::TwoMoons { n, noise } => {
                if *n < 10 {
                    return Err(Error::config("problem.n", "need at least 10 samples"));
                }
                nonnegative("problem.noise", *noise)?;
            }
            ProblemConfig::Blobs {
                classes,
                per_class,
                spread,
            } => {
                if *classes < 2 {
                    return Err(Error::config(
                        "problem.classes",
                        "need at least two classes",
                    ));
                }
                if *per_class == 0 {
                    return Err(Error::config("problem.per_class", "must be positive"));
                }
                nonnegative("problem.spread", *spread)?;
            }
            ProblemConfig::Csv { classes, .. } => {
                if matches!(classes, Some(c) if *c < 2) {
                    return Err(Error::config(
                        "problem.classes",
                        "need at least two classes",
                    ));
                }
            }
            _ => {
                let landscape = self.problem.landscape()?.expect("landscape variant");
                if let Some(start) = &self.start {
                    if start.len() != landscape.dimension() {
                        return Err(Error::config(
                            "start",
                            format!(
                                "has {} coordinates, the landscape has {}",
                                start.len(),
                                landscape.dimension()
                            ),
                        ));
                    }
                    if start.iter().any(|v| !v.is_finite()) {
                        return Err(Error::config("start", "coordinates must be finite"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config types always serialize")
    }

    /// Where the trace goes, honouring [`OUTPUT_DIR_ENV`].
    pub fn resolved_output(&self) -> PathBuf {
        match std::env::var_os(OUTPUT_DIR_ENV) {
            Some(dir) if !dir.is_empty() => {
                let dir = PathBuf::from(dir);
                if self.output.is_absolute() {
                    dir.join(self.output.file_name().unwrap_or_default())
                } else {
                    dir.join(&self.output)
                }
            }
            _ => self.output.clone(),
        }
    }
}

/// Parse and validate config text.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let config: ExperimentConfig =
        toml::from_str(text).map_err(|e| Error::ConfigParse(e.to_string()))?;
    config.validate()?;
    Ok(config)
}

pub fn load_config(path: impl AsRef<Path>) -> Result<ExperimentConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
epochs = 1

[problem]
kind = "rosenbrock"

[optimizer]
kind = "sgd"
beta = 0.9

[schedule]
kind = "constant"
lr = 0.01
"#;

    #[test]
    fn minimal_config_gets_defaults() {
        let c = parse_config(MINIMAL).unwrap();
        assert_eq!(c.problem, ProblemConfig::Rosenbrock { dimension: 2 });
        assert_eq!(
            c.optimizer,
            OptimizerConfig::Sgd {
                beta: 0.9,
                weight_decay: 5e-4
            }
        );
        assert_eq!(c.tracker, TrackerConfig::Window { size: None });
        assert_eq!(c.iterations_per_epoch, 100);
        assert_eq!(c.seed, 0);
        // defaults are written back out
        let text = c.to_toml();
        assert!(text.contains("weight_decay = 0.0005"));
        assert_eq!(parse_config(&text).unwrap(), c);
    }

    #[test]
    fn range_error_names_the_key() {
        let text = r#"
epochs = 1
[problem]
kind = "rosenbrock"
[optimizer]
kind = "lcam"
beta_sparse = 1.5
[schedule]
kind = "constant"
lr = 0.01
"#;
        let err = parse_config(text).unwrap_err();
        assert!(err.to_string().contains("beta_sparse"), "{err}");
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn unknown_keys_rejected() {
        let typo = MINIMAL.replace("beta = 0.9", "betta = 0.9");
        let err = parse_config(&typo).unwrap_err();
        assert!(err.to_string().contains("betta"), "{err}");
        let top = format!("epohcs = 3\n{MINIMAL}");
        assert!(parse_config(&top).is_err());
    }

    #[test]
    fn start_must_match_dimension() {
        let text = format!("start = [0.0, 0.0, 0.0]\n{MINIMAL}");
        let err = parse_config(&text).unwrap_err();
        assert!(err.to_string().contains("start"));
    }

    #[test]
    fn missing_file_is_io() {
        let err = load_config("/definitely/not/here.toml").unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn coupled_spring_psd_violation() {
        let text = MINIMAL.replace(
            "kind = \"rosenbrock\"",
            "kind = \"coupled_spring\"\ncoupling = 3.0",
        );
        let err = parse_config(&text).unwrap_err();
        assert!(err.to_string().contains("problem.coupling"), "{err}");
    }
}
