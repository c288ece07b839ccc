//! Deterministic test objectives with analytic gradients.

mod coupled;
mod finite_diff;

use std::fmt;
use std::str::FromStr;

pub use coupled::{
    eval_coupled_spring, grad_coupled_spring, CoupledSpring, CoupledSpringParams, SpringGroup,
};
pub use finite_diff::{
    central_difference, finite_difference_gradient, gradient_error, GradientError,
};

use crate::error::{check_finite, check_len, Error, Result};

/// A differentiable objective over a fixed-length parameter vector.
pub trait Landscape: Send + Sync {
    fn name(&self) -> &str;

    fn dimension(&self) -> usize;

    fn eval(&self, theta: &[f64]) -> Result<f64>;

    fn grad(&self, theta: &[f64]) -> Result<Vec<f64>>;

    /// A stationary minimiser and its value, when one is known in closed form.
    fn known_minimum(&self) -> Option<(Vec<f64>, f64)> {
        None
    }

    /// Conventional starting point for optimisation runs.
    fn default_start(&self) -> Vec<f64>;
}

fn check_input(theta: &[f64], dimension: usize) -> Result<()> {
    check_len("landscape input", dimension, theta.len())?;
    check_finite("landscape input", theta)
}

fn check_min_dim(theta: &[f64], min: usize) -> Result<()> {
    if theta.len() < min {
        return Err(Error::Dimension {
            context: "landscape input",
            expected: min,
            actual: theta.len(),
        });
    }
    check_finite("landscape input", theta)
}

/// `½ Σ sᵢθᵢ²`
pub fn eval_quadratic(theta: &[f64], scales: &[f64]) -> Result<f64> {
    check_input(theta, scales.len())?;
    Ok(0.5
        * theta
            .iter()
            .zip(scales)
            .map(|(t, s)| s * t * t)
            .sum::<f64>())
}

pub fn grad_quadratic(theta: &[f64], scales: &[f64]) -> Result<Vec<f64>> {
    check_input(theta, scales.len())?;
    Ok(theta.iter().zip(scales).map(|(t, s)| s * t).collect())
}

/// `½(θ₁² − θ₂²) + ¼θ₂⁴`, plus `½θᵢ²` for any further coordinates.
///
/// Saddle at the origin, minima at `(0, ±1)` with value −¼.
pub fn eval_saddle(theta: &[f64]) -> Result<f64> {
    check_min_dim(theta, 2)?;
    let (x, y) = (theta[0], theta[1]);
    let rest: f64 = theta[2..].iter().map(|t| t * t).sum();
    Ok(0.5 * (x * x - y * y) + 0.25 * y.powi(4) + 0.5 * rest)
}

pub fn grad_saddle(theta: &[f64]) -> Result<Vec<f64>> {
    check_min_dim(theta, 2)?;
    let (x, y) = (theta[0], theta[1]);
    let mut g = Vec::with_capacity(theta.len());
    g.push(x);
    g.push(-y + y.powi(3));
    g.extend_from_slice(&theta[2..]);
    Ok(g)
}

/// Chained Rosenbrock `Σ (1 − θᵢ)² + 100(θᵢ₊₁ − θᵢ²)²`, minimum at all-ones.
pub fn eval_rosenbrock(theta: &[f64]) -> Result<f64> {
    check_min_dim(theta, 2)?;
    Ok(theta
        .windows(2)
        .map(|w| (1.0 - w[0]).powi(2) + 100.0 * (w[1] - w[0] * w[0]).powi(2))
        .sum())
}

pub fn grad_rosenbrock(theta: &[f64]) -> Result<Vec<f64>> {
    check_min_dim(theta, 2)?;
    let mut g = vec![0.0; theta.len()];
    for i in 0..theta.len() - 1 {
        let (a, b) = (theta[i], theta[i + 1]);
        let r = b - a * a;
        g[i] += -2.0 * (1.0 - a) - 400.0 * a * r;
        g[i + 1] += 200.0 * r;
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Quadratic {
    scales: Vec<f64>,
}

impl Quadratic {
    pub fn new(scales: Vec<f64>) -> Result<Self> {
        if scales.is_empty() {
            return Err(Error::config("scales", "need at least one coordinate"));
        }
        if let Some(s) = scales.iter().find(|s| !(**s > 0.0 && s.is_finite())) {
            return Err(Error::config(
                "scales",
                format!("scales must be positive, got {s}"),
            ));
        }
        Ok(Self { scales })
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }
}

impl Landscape for Quadratic {
    fn name(&self) -> &str {
        "quadratic"
    }

    fn dimension(&self) -> usize {
        self.scales.len()
    }

    fn eval(&self, theta: &[f64]) -> Result<f64> {
        eval_quadratic(theta, &self.scales)
    }

    fn grad(&self, theta: &[f64]) -> Result<Vec<f64>> {
        grad_quadratic(theta, &self.scales)
    }

    fn known_minimum(&self) -> Option<(Vec<f64>, f64)> {
        Some((vec![0.0; self.scales.len()], 0.0))
    }

    fn default_start(&self) -> Vec<f64> {
        vec![1.0; self.scales.len()]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Saddle {
    dimension: usize,
}

impl Saddle {
    pub fn new(dimension: usize) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::config(
                "dimension",
                "saddle needs at least two coordinates",
            ));
        }
        Ok(Self { dimension })
    }
}

impl Landscape for Saddle {
    fn name(&self) -> &str {
        "saddle"
    }

    fn dimension(&self) -> usize {
        self.dimension
    }

    fn eval(&self, theta: &[f64]) -> Result<f64> {
        check_len("landscape input", self.dimension, theta.len())?;
        eval_saddle(theta)
    }

    fn grad(&self, theta: &[f64]) -> Result<Vec<f64>> {
        check_len("landscape input", self.dimension, theta.len())?;
        grad_saddle(theta)
    }

    fn known_minimum(&self) -> Option<(Vec<f64>, f64)> {
        let mut theta = vec![0.0; self.dimension];
        theta[1] = 1.0;
        Some((theta, -0.25))
    }

    /// Just off the saddle along the unstable direction.
    fn default_start(&self) -> Vec<f64> {
        let mut theta = vec![0.0; self.dimension];
        theta[0] = 1.0;
        theta[1] = 1e-3;
        theta
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rosenbrock {
    dimension: usize,
}

impl Rosenbrock {
    pub fn new(dimension: usize) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::config(
                "dimension",
                "rosenbrock needs at least two coordinates",
            ));
        }
        Ok(Self { dimension })
    }
}

impl Landscape for Rosenbrock {
    fn name(&self) -> &str {
        "rosenbrock"
    }

    fn dimension(&self) -> usize {
        self.dimension
    }

    fn eval(&self, theta: &[f64]) -> Result<f64> {
        check_len("landscape input", self.dimension, theta.len())?;
        eval_rosenbrock(theta)
    }

    fn grad(&self, theta: &[f64]) -> Result<Vec<f64>> {
        check_len("landscape input", self.dimension, theta.len())?;
        grad_rosenbrock(theta)
    }

    fn known_minimum(&self) -> Option<(Vec<f64>, f64)> {
        Some((vec![1.0; self.dimension], 0.0))
    }

    /// The classic `(−1.2, 1, −1.2, 1, …)` start.
    fn default_start(&self) -> Vec<f64> {
        (0..self.dimension)
            .map(|i| if i % 2 == 0 { -1.2 } else { 1.0 })
            .collect()
    }
}

/// Names under which the built-in landscapes are addressable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LandscapeId {
    Quadratic,
    Saddle,
    CoupledSpring,
    Rosenbrock,
}

impl LandscapeId {
    pub const ALL: [LandscapeId; 4] = [
        LandscapeId::Quadratic,
        LandscapeId::Saddle,
        LandscapeId::CoupledSpring,
        LandscapeId::Rosenbrock,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LandscapeId::Quadratic => "quadratic",
            LandscapeId::Saddle => "saddle",
            LandscapeId::CoupledSpring => "coupled-spring",
            LandscapeId::Rosenbrock => "rosenbrock",
        }
    }

    /// Default instance: `s = [1, 100]` quadratic, 2-d saddle and Rosenbrock,
    /// five-pair coupled spring.
    pub fn build_default(self) -> Box<dyn Landscape> {
        match self {
            LandscapeId::Quadratic => Box::new(Quadratic::new(vec![1.0, 100.0]).unwrap()),
            LandscapeId::Saddle => Box::new(Saddle::new(2).unwrap()),
            LandscapeId::CoupledSpring => {
                Box::new(CoupledSpring::new(CoupledSpringParams::default()).unwrap())
            }
            LandscapeId::Rosenbrock => Box::new(Rosenbrock::new(2).unwrap()),
        }
    }
}

impl fmt::Display for LandscapeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LandscapeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('_', "-");
        LandscapeId::ALL
            .into_iter()
            .find(|id| id.as_str() == norm)
            .ok_or_else(|| Error::config("landscape", format!("unknown landscape `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_examples() {
        assert_eq!(eval_quadratic(&[0.0, 0.0], &[1.0, 100.0]).unwrap(), 0.0);
        assert_eq!(
            grad_quadratic(&[0.0, 0.0], &[1.0, 100.0]).unwrap(),
            vec![0.0, 0.0]
        );
        assert_eq!(eval_quadratic(&[1.0, 1.0], &[1.0, 100.0]).unwrap(), 50.5);
        assert_eq!(
            grad_quadratic(&[1.0, 1.0], &[1.0, 100.0]).unwrap(),
            vec![1.0, 100.0]
        );
        assert!(eval_quadratic(&[f64::NAN, 0.0], &[1.0, 1.0]).is_err());
        assert!(eval_quadratic(&[1.0], &[1.0, 1.0]).is_err());
        assert!(Quadratic::new(vec![1.0, 0.0]).is_err());
    }

    #[test]
    fn saddle_examples() {
        assert_eq!(grad_saddle(&[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
        assert_eq!(eval_saddle(&[0.0, 1.0]).unwrap(), -0.25);
        assert_eq!(grad_saddle(&[0.0, 1.0]).unwrap(), vec![0.0, 0.0]);
        assert!(eval_saddle(&[1.0]).is_err());
        assert!(Saddle::new(1).is_err());
    }

    #[test]
    fn rosenbrock_examples() {
        assert_eq!(eval_rosenbrock(&[1.0, 1.0]).unwrap(), 0.0);
        assert_eq!(grad_rosenbrock(&[1.0, 1.0]).unwrap(), vec![0.0, 0.0]);
        assert!((eval_rosenbrock(&[-1.2, 1.0]).unwrap() - 24.2).abs() < 1e-12);
    }

    #[test]
    fn known_minima_are_stationary() {
        for id in LandscapeId::ALL {
            let l = id.build_default();
            let (theta, f) = l.known_minimum().expect("all defaults have a minimum");
            let g = l.grad(&theta).unwrap();
            let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!(norm <= 1e-8, "{id}: |grad| = {norm}");
            assert_eq!(l.eval(&theta).unwrap(), f, "{id}");
            assert_eq!(l.default_start().len(), l.dimension());
        }
    }

    #[test]
    fn ids_parse() {
        for id in LandscapeId::ALL {
            assert_eq!(id.as_str().parse::<LandscapeId>().unwrap(), id);
        }
        assert_eq!(
            "coupled_spring".parse::<LandscapeId>().unwrap(),
            LandscapeId::CoupledSpring
        );
        assert!("himmelblau".parse::<LandscapeId>().is_err());
    }
}
