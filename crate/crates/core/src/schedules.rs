//! Learning-rate schedules.
//!
//! Epochs are counted from 0. A step-drop schedule with drops at
//! `[30, 60, 90]` therefore runs 30 epochs at the base rate, and the
//! per-iteration decay starts with the first iteration of the first epoch
//! whose index is strictly greater than `warmup_epochs`.

use crate::error::{Error, Result};

/// How the exponential decay is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecayMode {
    /// `base · decay^k` with a single exponentiation.
    #[default]
    ClosedForm,
    /// Multiply the current rate by `decay` once per decayed iteration.
    Iterative,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScheduleKind {
    Constant {
        lr: f64,
    },
    StepDrop {
        base_lr: f64,
        drop_epochs: Vec<u64>,
        factor: f64,
    },
    PerIterationDecay {
        base_lr: f64,
        warmup_epochs: u64,
        decay: f64,
        mode: DecayMode,
    },
}

impl ScheduleKind {
    pub fn validate(&self) -> Result<()> {
        let positive = |key: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(key, format!("must be positive, got {v}")))
            }
        };
        match self {
            ScheduleKind::Constant { lr } => positive("lr", *lr),
            ScheduleKind::StepDrop {
                base_lr,
                drop_epochs,
                factor,
            } => {
                positive("base_lr", *base_lr)?;
                check_factor("factor", *factor)?;
                check_increasing(drop_epochs)
            }
            ScheduleKind::PerIterationDecay { base_lr, decay, .. } => {
                positive("base_lr", *base_lr)?;
                check_factor("decay", *decay)
            }
        }
    }
}

fn check_factor(key: &str, factor: f64) -> Result<()> {
    if factor > 0.0 && factor < 1.0 {
        Ok(())
    } else {
        Err(Error::config(
            key,
            format!("must lie in (0, 1), got {factor}"),
        ))
    }
}

fn check_increasing(drop_epochs: &[u64]) -> Result<()> {
    if drop_epochs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::config("drop_epochs", "must be strictly increasing"));
    }
    Ok(())
}

/// Rates are floored at the smallest normal f64 so they never reach zero.
fn floor_lr(lr: f64) -> f64 {
    lr.max(f64::MIN_POSITIVE)
}

/// `base_lr · factor^d` where `d` counts the drop epochs `≤ epoch`.
///
/// Computed as `base_lr / (1/factor)^d`: for the usual decimal factors the
/// reciprocal is an integer, so e.g. 0.1 with factor 0.2 yields exactly the
/// f64 values 0.02, 0.004 and 0.0008.
pub fn step_drop_lr(epoch: u64, base_lr: f64, drop_epochs: &[u64], factor: f64) -> Result<f64> {
    check_factor("factor", factor)?;
    check_increasing(drop_epochs)?;
    let drops = drop_epochs.iter().take_while(|&&d| d <= epoch).count();
    Ok(floor_lr(base_lr / factor.recip().powi(drops as i32)))
}

/// Position within a run plus the rate in force at that position.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleState {
    epoch: u64,
    iteration_in_epoch: u64,
    global_iteration: u64,
    iterations_per_epoch: u64,
    current_lr: f64,
    kind: ScheduleKind,
}

impl ScheduleState {
    pub fn new(kind: ScheduleKind, iterations_per_epoch: u64) -> Result<Self> {
        kind.validate()?;
        if iterations_per_epoch == 0 {
            return Err(Error::config("iterations_per_epoch", "must be positive"));
        }
        let mut state = Self {
            epoch: 0,
            iteration_in_epoch: 0,
            global_iteration: 0,
            iterations_per_epoch,
            current_lr: 0.0,
            kind,
        };
        state.current_lr = state.closed_form_lr();
        Ok(state)
    }

    pub fn epoch(&self) -> u64 {
        self.epoch
    }

    pub fn iteration_in_epoch(&self) -> u64 {
        self.iteration_in_epoch
    }

    pub fn global_iteration(&self) -> u64 {
        self.global_iteration
    }

    pub fn iterations_per_epoch(&self) -> u64 {
        self.iterations_per_epoch
    }

    pub fn kind(&self) -> &ScheduleKind {
        &self.kind
    }

    /// Rate for the current iteration.
    pub fn lr(&self) -> f64 {
        self.current_lr
    }

    /// Move to the next iteration.
    pub fn advance(&mut self) {
        self.global_iteration += 1;
        self.iteration_in_epoch += 1;
        if self.iteration_in_epoch == self.iterations_per_epoch {
            self.iteration_in_epoch = 0;
            self.epoch += 1;
        }
        self.current_lr = match self.kind {
            ScheduleKind::PerIterationDecay {
                warmup_epochs,
                decay,
                mode: DecayMode::Iterative,
                ..
            } if self.epoch > warmup_epochs => floor_lr(self.current_lr * decay),
            _ => self.closed_form_lr(),
        };
    }

    /// Iterations decayed so far, counting the current one.
    pub fn decayed_iterations(&self, warmup_epochs: u64) -> u64 {
        if self.epoch <= warmup_epochs {
            return 0;
        }
        let boundary = (warmup_epochs + 1) * self.iterations_per_epoch;
        self.global_iteration + 1 - boundary
    }

    fn closed_form_lr(&self) -> f64 {
        match &self.kind {
            ScheduleKind::Constant { lr } => *lr,
            ScheduleKind::StepDrop {
                base_lr,
                drop_epochs,
                factor,
            } => step_drop_lr(self.epoch, *base_lr, drop_epochs, *factor)
                .expect("validated at construction"),
            ScheduleKind::PerIterationDecay {
                base_lr,
                warmup_epochs,
                decay,
                ..
            } => per_iteration_decay_lr(self, *base_lr, *warmup_epochs, *decay),
        }
    }
}

/// `base_lr` through epoch `warmup_epochs`, then `base_lr · decay^k` where `k`
/// counts the iterations since the warmup boundary, the current one included.
pub fn per_iteration_decay_lr(
    state: &ScheduleState,
    base_lr: f64,
    warmup_epochs: u64,
    decay: f64,
) -> f64 {
    let k = state.decayed_iterations(warmup_epochs);
    if k == 0 {
        base_lr
    } else {
        floor_lr(base_lr * decay.powf(k as f64))
    }
}
