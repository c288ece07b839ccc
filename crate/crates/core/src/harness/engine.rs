//! One configured optimizer plus the loss-phase tracker that runs alongside it.

use crate::error::{check_scalar, Result};
use crate::optimizers::{
    adagrad_step, adam_step, lcam_step, sgd_momentum_step, AdaGradState, AdamState, LcamConfig,
    MomentumState, ParameterVector, Phase, PhaseTracker, TrackerMode,
};

use super::config::OptimizerConfig;

#[derive(Debug, Clone)]
enum Rule {
    Sgd {
        state: MomentumState,
        beta: f64,
        weight_decay: f64,
    },
    Lcam {
        state: MomentumState,
        config: LcamConfig,
    },
    AdaGrad {
        state: AdaGradState,
        eps: f64,
    },
    Adam {
        state: AdamState,
        beta1: f64,
        beta2: f64,
        eps: f64,
    },
}

/// What the engine reports for one step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepInfo {
    pub beta_applied: f64,
    pub phase: Phase,
    pub mean_loss: f64,
}

/// Every optimizer kind keeps a phase tracker so traces always carry the
/// mean loss and phase; only LCAM feeds the phase back into its update.
#[derive(Debug, Clone)]
pub struct Engine {
    rule: Rule,
    tracker: PhaseTracker,
}

impl Engine {
    pub fn new(config: &OptimizerConfig, len: usize, tracker: TrackerMode) -> Result<Self> {
        config.validate()?;
        let rule = match *config {
            OptimizerConfig::Sgd { beta, weight_decay } => Rule::Sgd {
                state: MomentumState::new(len),
                beta,
                weight_decay,
            },
            OptimizerConfig::Lcam {
                beta_sparse,
                beta_nonsparse,
                weight_decay,
            } => Rule::Lcam {
                state: MomentumState::new(len),
                config: LcamConfig::new(beta_sparse, beta_nonsparse, weight_decay)?,
            },
            OptimizerConfig::Adagrad { eps } => Rule::AdaGrad {
                state: AdaGradState::new(len),
                eps,
            },
            OptimizerConfig::Adam { beta1, beta2, eps } => Rule::Adam {
                state: AdamState::new(len),
                beta1,
                beta2,
                eps,
            },
        };
        Ok(Self {
            rule,
            tracker: PhaseTracker::new(tracker)?,
        })
    }

    pub fn tracker(&self) -> &PhaseTracker {
        &self.tracker
    }

    /// `beta_applied` is the momentum coefficient for SGD and LCAM, β₁ for
    /// Adam and 0 for AdaGrad.
    pub fn step(
        &mut self,
        params: &mut ParameterVector,
        grads: &[f64],
        lr: f64,
        loss: f64,
    ) -> Result<StepInfo> {
        check_scalar("loss", loss)?;
        let beta_applied = match &mut self.rule {
            Rule::Lcam { state, config } => {
                let step = lcam_step(params, grads, state, &mut self.tracker, lr, config, loss)?;
                return Ok(StepInfo {
                    beta_applied: step.beta_applied,
                    phase: step.phase,
                    mean_loss: step.mean_loss,
                });
            }
            Rule::Sgd {
                state,
                beta,
                weight_decay,
            } => {
                sgd_momentum_step(params, grads, state, lr, *beta, *weight_decay)?;
                *beta
            }
            Rule::AdaGrad { state, eps } => {
                adagrad_step(params, grads, state, lr, *eps)?;
                0.0
            }
            Rule::Adam {
                state,
                beta1,
                beta2,
                eps,
            } => {
                adam_step(params, grads, state, lr, *beta1, *beta2, *eps)?;
                *beta1
            }
        };
        let (mean_loss, phase) = self.tracker.observe(loss)?;
        Ok(StepInfo {
            beta_applied,
            phase,
            mean_loss,
        })
    }
}
