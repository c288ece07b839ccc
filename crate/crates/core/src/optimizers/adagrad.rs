use super::{check_positive, ParameterVector};
use crate::error::{check_finite, check_len, Error, Result};

/// Running per-coordinate sum of squared gradients.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaGradState {
    grad_sq_sum: Vec<f64>,
    step_count: u64,
}

impl AdaGradState {
    pub fn new(len: usize) -> Self {
        Self {
            grad_sq_sum: vec![0.0; len],
            step_count: 0,
        }
    }

    pub fn grad_sq_sum(&self) -> &[f64] {
        &self.grad_sq_sum
    }

    pub fn step_count(&self) -> u64 {
        self.step_count
    }
}

/// `G ← G + g⊙g`, `θ ← θ − lr/√(G + ε) ⊙ g`. ε sits inside the square root.
pub fn adagrad_step(
    params: &mut ParameterVector,
    grads: &[f64],
    state: &mut AdaGradState,
    lr: f64,
    eps: f64,
) -> Result<()> {
    check_len("gradient", params.len(), grads.len())?;
    check_len("grad_sq_sum", params.len(), state.grad_sq_sum.len())?;
    check_finite("gradient", grads)?;
    check_positive("lr", lr)?;
    check_positive("eps", eps)?;

    let sums: Vec<f64> = state
        .grad_sq_sum
        .iter()
        .zip(grads)
        .map(|(s, g)| s + g * g)
        .collect();
    let next: Vec<f64> = params
        .iter()
        .zip(grads)
        .zip(&sums)
        .map(|((theta, g), s)| theta - lr / (s + eps).sqrt() * g)
        .collect();
    if let Some(index) = sums
        .iter()
        .zip(&next)
        .position(|(s, p)| !s.is_finite() || !p.is_finite())
    {
        return Err(Error::NonFinite {
            what: "updated parameters",
            index,
        });
    }

    params.commit(next);
    state.grad_sq_sum = sums;
    state.step_count += 1;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_step_by_hand() {
        let mut p = ParameterVector::new(vec![1.0]).unwrap();
        let mut s = AdaGradState::new(1);
        adagrad_step(&mut p, &[2.0], &mut s, 0.1, 1e-8).unwrap();
        assert_eq!(s.grad_sq_sum(), &[4.0]);
        let expected = 1.0 - 0.1 * 2.0 / (4.0f64 + 1e-8).sqrt();
        assert!((p[0] - expected).abs() < 1e-15);
        assert!((p[0] - 0.9).abs() < 1e-9);
    }

    #[test]
    fn zero_gradient_is_a_fixed_point() {
        let mut p = ParameterVector::new(vec![0.3, -4.0]).unwrap();
        let mut s = AdaGradState::new(2);
        adagrad_step(&mut p, &[0.0, 0.0], &mut s, 0.5, 1e-8).unwrap();
        assert_eq!(p.as_slice(), &[0.3, -4.0]);
        assert_eq!(s.grad_sq_sum(), &[0.0, 0.0]);
    }

    #[test]
    fn rejects_nonpositive_eps() {
        let mut p = ParameterVector::new(vec![1.0]).unwrap();
        let mut s = AdaGradState::new(1);
        assert!(adagrad_step(&mut p, &[1.0], &mut s, 0.1, 0.0).is_err());
        assert_eq!(s.step_count(), 0);
    }
}
