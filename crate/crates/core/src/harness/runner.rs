//! The training loop shared by every problem kind.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::landscapes::Landscape;
use crate::optimizers::ParameterVector;
use crate::rng::{self, Domain};
use crate::schedules::ScheduleState;
use crate::tinynet::{evaluate, init_mlp, Dataset, Mlp, Split};

use super::config::{BuiltProblem, ExperimentConfig};
use super::engine::Engine;
use super::trace::TraceRecord;

#[derive(Debug, Clone, PartialEq)]
pub enum RunStatus {
    Completed,
    /// A loss, gradient or update went non-finite. The trace holds every
    /// iteration before it.
    Diverged {
        last_good_iteration: Option<u64>,
        reason: String,
    },
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub name: String,
    pub problem: &'static str,
    pub records: Vec<TraceRecord>,
    pub status: RunStatus,
    pub final_params: Vec<f64>,
    /// Landscape value, or mean training-set loss for dataset problems, at the
    /// final parameters. `None` for diverged runs.
    pub final_loss: Option<f64>,
}

impl RunOutcome {
    pub fn diverged(&self) -> bool {
        matches!(self.status, RunStatus::Diverged { .. })
    }
}

enum Problem {
    Landscape {
        landscape: Box<dyn Landscape>,
        params: ParameterVector,
        noise: f64,
        rng: rand_chacha::ChaCha8Rng,
    },
    Dataset {
        data: Dataset,
        model: Mlp,
        batch_size: usize,
    },
}

impl Problem {
    fn params(&self) -> &ParameterVector {
        match self {
            Problem::Landscape { params, .. } => params,
            Problem::Dataset { model, .. } => model.params(),
        }
    }

    fn params_mut(&mut self) -> &mut ParameterVector {
        match self {
            Problem::Landscape { params, .. } => params,
            Problem::Dataset { model, .. } => model.params_mut(),
        }
    }

    fn loss_and_grad(&mut self, batch: Option<&[usize]>) -> Result<(f64, Vec<f64>)> {
        match self {
            Problem::Landscape {
                landscape,
                params,
                noise,
                rng,
            } => {
                let loss = landscape.eval(params)?;
                let mut grad = landscape.grad(params)?;
                if *noise > 0.0 {
                    for g in &mut grad {
                        let z: f64 = rng.sample(StandardNormal);
                        *g += *noise * z;
                    }
                }
                Ok((loss, grad))
            }
            Problem::Dataset { data, model, .. } => {
                let (features, labels) = data.gather(batch.expect("dataset batches"));
                model.forward_loss(&features, &labels)
            }
        }
    }

    fn final_loss(&self) -> Result<f64> {
        match self {
            Problem::Landscape {
                landscape, params, ..
            } => landscape.eval(params),
            Problem::Dataset { data, model, .. } => {
                let (features, labels) = data.gather(data.split_indices(Split::Train));
                Ok(model.forward_loss(&features, &labels)?.0)
            }
        }
    }
}

fn is_numeric(e: &Error) -> bool {
    matches!(e, Error::NonFinite { .. })
}

/// Run one experiment to completion or divergence.
///
/// Deterministic in the config: every random draw comes from a stream of
/// `config.seed`. Only `wall_ms` varies between identical runs.
pub fn run_experiment(config: &ExperimentConfig) -> Result<RunOutcome> {
    config.validate()?;
    let started = Instant::now();

    let mut problem = match config.problem.build(config.seed)? {
        BuiltProblem::Landscape(landscape) => {
            let start = config
                .start
                .clone()
                .unwrap_or_else(|| landscape.default_start());
            Problem::Landscape {
                params: ParameterVector::new(start)?,
                landscape,
                noise: config.grad_noise,
                rng: rng::stream(config.seed, Domain::GradNoise, 0),
            }
        }
        BuiltProblem::Dataset(data) => {
            if data.split_indices(Split::Train).is_empty() {
                return Err(Error::data(None, "training split is empty"));
            }
            let mut layers = vec![data.dim()];
            layers.extend_from_slice(&config.hidden);
            layers.push(data.classes());
            Problem::Dataset {
                model: init_mlp(&layers, config.seed)?,
                data,
                batch_size: config.batch_size,
            }
        }
    };

    let iterations_per_epoch = match &problem {
        Problem::Landscape { .. } => config.iterations_per_epoch,
        Problem::Dataset {
            data, batch_size, ..
        } => data.split_indices(Split::Train).len().div_ceil(*batch_size) as u64,
    };
    let mut schedule = ScheduleState::new(config.schedule.to_kind(), iterations_per_epoch)?;
    let mut engine = Engine::new(
        &config.optimizer,
        problem.params().len(),
        config.tracker.mode(iterations_per_epoch),
    )?;

    let mut records: Vec<TraceRecord> = Vec::new();
    let mut status = RunStatus::Completed;

    'epochs: for epoch in 0..config.epochs {
        let batches: Vec<Option<Vec<usize>>> = match &problem {
            Problem::Landscape { .. } => vec![None; iterations_per_epoch as usize],
            Problem::Dataset {
                data, batch_size, ..
            } => {
                let mut order = data.split_indices(Split::Train).to_vec();
                order.shuffle(&mut rng::stream(config.seed, Domain::Shuffle, epoch));
                order
                    .chunks(*batch_size)
                    .map(|c| Some(c.to_vec()))
                    .collect()
            }
        };

        for batch in &batches {
            let iteration = schedule.global_iteration();
            let lr = schedule.lr();
            let step = problem
                .loss_and_grad(batch.as_deref())
                .and_then(|(loss, grads)| {
                    let info = engine.step(problem.params_mut(), &grads, lr, loss)?;
                    Ok((loss, info))
                });
            let (loss, info) = match step {
                Ok(v) => v,
                Err(e) if is_numeric(&e) => {
                    status = RunStatus::Diverged {
                        last_good_iteration: records.last().map(|r| r.global_iteration),
                        reason: e.to_string(),
                    };
                    break 'epochs;
                }
                Err(e) => return Err(e),
            };
            records.push(TraceRecord {
                epoch,
                global_iteration: iteration,
                lr,
                loss,
                mean_loss: info.mean_loss,
                phase: info.phase,
                beta_applied: info.beta_applied,
                test_error: None,
                wall_ms: started.elapsed().as_millis() as u64,
            });
            schedule.advance();
        }

        if let Problem::Dataset { data, model, .. } = &problem {
            if !data.split_indices(Split::Test).is_empty() {
                let err = evaluate(model, data, Split::Test)?;
                if let Some(last) = records.last_mut() {
                    last.test_error = Some(err);
                }
            }
        }
    }

    let final_loss = match status {
        RunStatus::Completed => problem.final_loss().ok().filter(|l| l.is_finite()),
        RunStatus::Diverged { .. } => None,
    };
    Ok(RunOutcome {
        name: config.name.clone(),
        problem: config.problem.id(),
        records,
        status,
        final_params: problem.params().to_vec(),
        final_loss,
    })
}

/// Run independent configs on separate threads. Results come back in input order.
pub fn run_all(configs: &[ExperimentConfig]) -> Vec<Result<RunOutcome>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = configs
            .iter()
            .map(|c| scope.spawn(move || run_experiment(c)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("run thread panicked"))
            .collect()
    })
}
