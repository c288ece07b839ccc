use super::{check_positive, check_unit_open, ParameterVector};
use crate::error::{check_finite, check_len, Error, Result};

/// First and second moment estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    first_moment: Vec<f64>,
    second_moment: Vec<f64>,
    step_count: u64,
}

impl AdamState {
    pub fn new(len: usize) -> Self {
        Self {
            first_moment: vec![0.0; len],
            second_moment: vec![0.0; len],
            step_count: 0,
        }
    }

    pub fn first_moment(&self) -> &[f64] {
        &self.first_moment
    }

    pub fn second_moment(&self) -> &[f64] {
        &self.second_moment
    }

    pub fn step_count(&self) -> u64 {
        self.step_count
    }
}

/// One Adam step with bias correction.
///
/// The step counter is incremented before the correction terms are formed,
/// and ε is added to the bias-corrected second moment under the square root:
/// `θ ← θ − lr·m̂ / √(v̂ + ε)`.
#[allow(clippy::too_many_arguments)]
pub fn adam_step(
    params: &mut ParameterVector,
    grads: &[f64],
    state: &mut AdamState,
    lr: f64,
    beta1: f64,
    beta2: f64,
    eps: f64,
) -> Result<()> {
    check_len("gradient", params.len(), grads.len())?;
    check_len("first_moment", params.len(), state.first_moment.len())?;
    check_len("second_moment", params.len(), state.second_moment.len())?;
    check_finite("gradient", grads)?;
    check_positive("lr", lr)?;
    check_unit_open("beta1", beta1)?;
    check_unit_open("beta2", beta2)?;
    check_positive("eps", eps)?;

    let t = state.step_count + 1;
    let correction1 = 1.0 - beta1.powf(t as f64);
    let correction2 = 1.0 - beta2.powf(t as f64);

    let n = params.len();
    let mut m = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    let mut next = Vec::with_capacity(n);
    for i in 0..n {
        let g = grads[i];
        let mi = beta1 * state.first_moment[i] + (1.0 - beta1) * g;
        let vi = beta2 * state.second_moment[i] + (1.0 - beta2) * g * g;
        let m_hat = mi / correction1;
        let v_hat = vi / correction2;
        next.push(params[i] - lr * m_hat / (v_hat + eps).sqrt());
        m.push(mi);
        v.push(vi);
    }
    if let Some(index) =
        (0..n).find(|&i| !(next[i].is_finite() && m[i].is_finite() && v[i].is_finite()))
    {
        return Err(Error::NonFinite {
            what: "updated parameters",
            index,
        });
    }

    params.commit(next);
    state.first_moment = m;
    state.second_moment = v;
    state.step_count = t;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_step_moves_by_about_lr() {
        let mut p = ParameterVector::new(vec![0.0]).unwrap();
        let mut s = AdamState::new(1);
        adam_step(&mut p, &[10.0], &mut s, 0.001, 0.9, 0.999, 1e-8).unwrap();
        // m̂ = 10, v̂ = 100, so the step is lr·10/√(100 + 1e-8).
        let expected = -0.001 * 10.0 / (100.0f64 + 1e-8).sqrt();
        assert!((p[0] - expected).abs() < 1e-18);
        assert!((p[0] + 0.001).abs() < 1e-12);
        assert_eq!(s.step_count(), 1);
    }

    #[test]
    fn zero_gradient_from_zero_state() {
        let mut p = ParameterVector::new(vec![0.7]).unwrap();
        let mut s = AdamState::new(1);
        adam_step(&mut p, &[0.0], &mut s, 0.001, 0.9, 0.999, 1e-8).unwrap();
        assert_eq!(p.as_slice(), &[0.7]);
        assert_eq!(s.second_moment(), &[0.0]);
    }
}
