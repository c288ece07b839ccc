use super::{
    check_nonnegative, check_unit_open, sgd_momentum_step, MomentumState, ParameterVector, Phase,
    PhaseTracker,
};
use crate::error::{check_scalar, Result};

/// Momentum coefficients for the two loss phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LcamConfig {
    beta_sparse: f64,
    beta_nonsparse: f64,
    weight_decay: f64,
}

impl LcamConfig {
    pub fn new(beta_sparse: f64, beta_nonsparse: f64, weight_decay: f64) -> Result<Self> {
        check_unit_open("beta_sparse", beta_sparse)?;
        check_unit_open("beta_nonsparse", beta_nonsparse)?;
        check_nonnegative("weight_decay", weight_decay)?;
        Ok(Self {
            beta_sparse,
            beta_nonsparse,
            weight_decay,
        })
    }

    pub fn beta_sparse(&self) -> f64 {
        self.beta_sparse
    }

    pub fn beta_nonsparse(&self) -> f64 {
        self.beta_nonsparse
    }

    pub fn weight_decay(&self) -> f64 {
        self.weight_decay
    }

    pub fn beta_for(&self, phase: Phase) -> f64 {
        match phase {
            Phase::Sparse => self.beta_sparse,
            Phase::NonSparse => self.beta_nonsparse,
        }
    }

    /// β for the next step given the last recorded phase. Before any phase
    /// has been recorded the sparse coefficient is used.
    pub fn next_beta(&self, last_phase: Option<Phase>) -> f64 {
        last_phase.map_or(self.beta_sparse, |p| self.beta_for(p))
    }
}

impl Default for LcamConfig {
    /// 0.9 below the mean, 0.95 at or above it, λ = 5e-4.
    fn default() -> Self {
        Self {
            beta_sparse: 0.9,
            beta_nonsparse: 0.95,
            weight_decay: 5e-4,
        }
    }
}

/// What one LCAM step did.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LcamStep {
    /// Momentum coefficient used for this update.
    pub beta_applied: f64,
    /// Phase of this step's loss; it selects β for the *next* step.
    pub phase: Phase,
    pub mean_loss: f64,
}

/// Loss-controlled asymmetric momentum step.
///
/// `loss` must be the loss at the parameters `grads` was computed from. The
/// update uses the β chosen after the previous step, then the loss is folded
/// into the tracker and the new phase is stored for the following step.
#[allow(clippy::too_many_arguments)]
pub fn lcam_step(
    params: &mut ParameterVector,
    grads: &[f64],
    state: &mut MomentumState,
    tracker: &mut PhaseTracker,
    lr: f64,
    config: &LcamConfig,
    loss: f64,
) -> Result<LcamStep> {
    check_scalar("loss", loss)?;
    let beta_applied = config.next_beta(tracker.current_phase());
    sgd_momentum_step(params, grads, state, lr, beta_applied, config.weight_decay)?;
    let (mean_loss, phase) = tracker.observe(loss)?;
    Ok(LcamStep {
        beta_applied,
        phase,
        mean_loss,
    })
}
