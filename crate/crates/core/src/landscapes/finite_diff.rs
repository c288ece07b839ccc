use super::Landscape;
use crate::error::{Error, Result};

/// Central differences `(f(θ + heᵢ) − f(θ − heᵢ)) / 2h` for every coordinate.
pub fn central_difference<F>(mut f: F, theta: &[f64], h: f64) -> Result<Vec<f64>>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    if !(1e-8..=1e-2).contains(&h) {
        return Err(Error::config(
            "h",
            format!("step must lie in [1e-8, 1e-2], got {h}"),
        ));
    }
    let mut probe = theta.to_vec();
    let mut out = Vec::with_capacity(theta.len());
    for i in 0..theta.len() {
        probe[i] = theta[i] + h;
        let plus = f(&probe)?;
        probe[i] = theta[i] - h;
        let minus = f(&probe)?;
        probe[i] = theta[i];
        if !plus.is_finite() || !minus.is_finite() {
            return Err(Error::NonFinite {
                what: "finite-difference evaluation",
                index: i,
            });
        }
        out.push((plus - minus) / (2.0 * h));
    }
    Ok(out)
}

pub fn finite_difference_gradient(
    landscape: &dyn Landscape,
    theta: &[f64],
    h: f64,
) -> Result<Vec<f64>> {
    central_difference(|t| landscape.eval(t), theta, h)
}

/// Worst disagreement between an analytic and a numerical gradient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientError {
    pub max_relative: f64,
    pub max_absolute: f64,
}

impl GradientError {
    pub fn passes(&self, rel_tol: f64) -> bool {
        self.max_relative <= rel_tol
    }
}

/// Compare two gradients coordinate by coordinate. The relative error of a
/// coordinate is `|a − n| / max(|a|, |n|, scale_floor)`; the floor keeps
/// vanishing components from dividing rounding noise by zero.
pub fn gradient_error(analytic: &[f64], numeric: &[f64], scale_floor: f64) -> GradientError {
    let mut max_relative: f64 = 0.0;
    let mut max_absolute: f64 = 0.0;
    for (a, n) in analytic.iter().zip(numeric) {
        let abs = (a - n).abs();
        max_absolute = max_absolute.max(abs);
        max_relative = max_relative.max(abs / a.abs().max(n.abs()).max(scale_floor));
    }
    GradientError {
        max_relative,
        max_absolute,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landscapes::Quadratic;

    #[test]
    fn exact_on_quadratic() {
        let q = Quadratic::new(vec![1.0]).unwrap();
        let g = finite_difference_gradient(&q, &[3.0], 1e-5).unwrap();
        assert!((g[0] - 3.0).abs() < 1e-8);
    }

    #[test]
    fn degenerate_steps_rejected() {
        let q = Quadratic::new(vec![1.0]).unwrap();
        assert!(finite_difference_gradient(&q, &[3.0], 0.0).is_err());
        assert!(finite_difference_gradient(&q, &[3.0], 1.0).is_err());
    }

    #[test]
    fn non_finite_evaluation_reported() {
        let err = central_difference(|t| Ok(1.0 / (t[0] - 1e-3)), &[0.0], 1e-3).unwrap_err();
        assert!(matches!(err, Error::NonFinite { index: 0, .. }));
    }
}
