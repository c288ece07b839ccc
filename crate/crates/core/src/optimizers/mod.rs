//! Update rules over flat parameter vectors.
//!
//! Each rule is a free function over explicit state so a training loop can
//! inspect or persist everything between steps. Steps are transactional: on
//! any error the parameters and state are left untouched.

mod adagrad;
mod adam;
mod lcam;
mod momentum;
mod params;
mod phase;

pub use adagrad::{adagrad_step, AdaGradState};
pub use adam::{adam_step, AdamState};
pub use lcam::{lcam_step, LcamConfig, LcamStep};
pub use momentum::{sgd_momentum_step, MomentumState};
pub use params::ParameterVector;
pub use phase::{classify_phase, Phase, PhaseTracker, TrackerMode};

use crate::error::{Error, Result};

fn check_unit_open(key: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::config(
            key,
            format!("must lie in (0, 1), got {value}"),
        ))
    }
}

fn check_positive(key: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::config(
            key,
            format!("must be positive and finite, got {value}"),
        ))
    }
}

fn check_nonnegative(key: &'static str, value: f64) -> Result<()> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::config(
            key,
            format!("must be non-negative and finite, got {value}"),
        ))
    }
}
