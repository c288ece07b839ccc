use super::{check_nonnegative, check_positive, check_unit_open, ParameterVector};
use crate::error::{check_finite, check_len, Error, Result};

/// Velocity buffer for heavy-ball SGD.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumState {
    velocity: Vec<f64>,
    step_count: u64,
}

impl MomentumState {
    pub fn new(len: usize) -> Self {
        Self {
            velocity: vec![0.0; len],
            step_count: 0,
        }
    }

    /// Resume from an explicit velocity, e.g. when replaying a saved trajectory.
    pub fn with_velocity(velocity: Vec<f64>, step_count: u64) -> Result<Self> {
        check_finite("velocity", &velocity)?;
        Ok(Self {
            velocity,
            step_count,
        })
    }

    pub fn velocity(&self) -> &[f64] {
        &self.velocity
    }

    pub fn step_count(&self) -> u64 {
        self.step_count
    }
}

/// One step of SGD with heavy-ball momentum and coupled L2 weight decay.
///
/// `g' = g + λθ`, `v ← βv + g'`, `θ ← θ − lr·v`. The learning rate is applied
/// at the parameter update, so changing β only rescales the effective step.
pub fn sgd_momentum_step(
    params: &mut ParameterVector,
    grads: &[f64],
    state: &mut MomentumState,
    lr: f64,
    beta: f64,
    weight_decay: f64,
) -> Result<()> {
    check_len("gradient", params.len(), grads.len())?;
    check_len("velocity", params.len(), state.velocity.len())?;
    check_finite("gradient", grads)?;
    check_positive("lr", lr)?;
    check_unit_open("beta", beta)?;
    check_nonnegative("weight_decay", weight_decay)?;

    let mut velocity = Vec::with_capacity(params.len());
    let mut next = Vec::with_capacity(params.len());
    for ((&theta, &g), &v) in params.iter().zip(grads).zip(&state.velocity) {
        let g = g + weight_decay * theta;
        let v = beta * v + g;
        velocity.push(v);
        next.push(theta - lr * v);
    }
    if let Some(index) = next
        .iter()
        .zip(&velocity)
        .position(|(p, v)| !p.is_finite() || !v.is_finite())
    {
        return Err(Error::NonFinite {
            what: "updated parameters",
            index,
        });
    }

    params.commit(next);
    state.velocity = velocity;
    state.step_count += 1;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(v: &[f64]) -> ParameterVector {
        ParameterVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn first_step_is_plain_gradient_descent() {
        let mut p = pv(&[0.0]);
        let mut s = MomentumState::new(1);
        sgd_momentum_step(&mut p, &[1.0], &mut s, 0.1, 0.9, 0.0).unwrap();
        assert_eq!(p.as_slice(), &[-0.1]);
        assert_eq!(s.velocity(), &[1.0]);
        assert_eq!(s.step_count(), 1);
    }

    #[test]
    fn coasting_on_velocity() {
        let mut p = pv(&[0.0]);
        let mut s = MomentumState::with_velocity(vec![1.0], 0).unwrap();
        sgd_momentum_step(&mut p, &[0.0], &mut s, 0.1, 0.9, 0.0).unwrap();
        assert!((p[0] + 0.09).abs() < 1e-15);
        assert!((s.velocity()[0] - 0.9).abs() < 1e-15);
    }

    #[test]
    fn weight_decay_enters_the_gradient() {
        let mut p = pv(&[2.0]);
        let mut s = MomentumState::new(1);
        sgd_momentum_step(&mut p, &[0.0], &mut s, 1.0, 0.5, 0.25).unwrap();
        assert_eq!(s.velocity(), &[0.5]);
        assert_eq!(p.as_slice(), &[1.5]);
    }

    #[test]
    fn errors_leave_state_untouched() {
        let mut p = pv(&[1.0, 2.0]);
        let mut s = MomentumState::new(2);
        assert!(matches!(
            sgd_momentum_step(&mut p, &[1.0], &mut s, 0.1, 0.9, 0.0),
            Err(Error::Dimension { .. })
        ));
        match sgd_momentum_step(&mut p, &[1.0, f64::INFINITY], &mut s, 0.1, 0.9, 0.0) {
            Err(Error::NonFinite { index, .. }) => assert_eq!(index, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(sgd_momentum_step(&mut p, &[1.0, 1.0], &mut s, 0.1, 1.0, 0.0).is_err());
        assert!(sgd_momentum_step(&mut p, &[1.0, 1.0], &mut s, 0.0, 0.9, 0.0).is_err());
        assert!(sgd_momentum_step(&mut p, &[1e10, 1.0], &mut s, 1e308, 0.9, 0.0).is_err());
        assert_eq!(p.as_slice(), &[1.0, 2.0]);
        assert_eq!(s.step_count(), 0);
        assert_eq!(s.velocity(), &[0.0, 0.0]);
    }
}
