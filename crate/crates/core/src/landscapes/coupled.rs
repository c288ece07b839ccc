//! Two parameter groups pulling on each other through a cross term.
//!
//! θ is laid out as `[n₀ … n_{k−1}, s₀ … s_{k−1}]` where `k = group_split`.
//! Each pair `(nᵢ, sᵢ)` contributes
//!
//! ```text
//! ½·stiff·(sᵢ − a)² + ½·soft·(nᵢ − b)² + coupling·(nᵢ − b)(sᵢ − a)
//! ```
//!
//! with `a = s_center`, `b = n_center`. The pair Hessian is
//! `[[soft, coupling], [coupling, stiff]]`, positive semidefinite iff
//! `coupling² ≤ stiff·soft`.

use super::{check_input, Landscape};
use crate::error::{Error, Result};

/// The two halves of a coupled-spring parameter vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpringGroup {
    /// Coordinates `0..group_split`, curvature `soft_scale`.
    N,
    /// Coordinates `group_split..`, curvature `stiff_scale`.
    S,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledSpringParams {
    /// Curvature of the s-group.
    pub stiff_scale: f64,
    /// Curvature of the n-group.
    pub soft_scale: f64,
    pub coupling: f64,
    /// Number of coordinates in each group.
    pub group_split: usize,
    pub s_center: f64,
    pub n_center: f64,
}

impl Default for CoupledSpringParams {
    fn default() -> Self {
        Self {
            stiff_scale: 4.0,
            soft_scale: 1.0,
            coupling: 1.5,
            group_split: 5,
            s_center: 1.0,
            n_center: -1.0,
        }
    }
}

impl CoupledSpringParams {
    pub fn validate(&self) -> Result<()> {
        for (key, v) in [
            ("stiff_scale", self.stiff_scale),
            ("soft_scale", self.soft_scale),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::config(key, format!("must be positive, got {v}")));
            }
        }
        for (key, v) in [
            ("coupling", self.coupling),
            ("s_center", self.s_center),
            ("n_center", self.n_center),
        ] {
            if !v.is_finite() {
                return Err(Error::config(key, "must be finite"));
            }
        }
        if self.group_split == 0 {
            return Err(Error::config(
                "group_split",
                "each group needs at least one coordinate",
            ));
        }
        if self.coupling * self.coupling > self.stiff_scale * self.soft_scale {
            return Err(Error::config(
                "coupling",
                format!(
                    "coupling² = {} exceeds stiff_scale·soft_scale = {}; the Hessian would be indefinite",
                    self.coupling * self.coupling,
                    self.stiff_scale * self.soft_scale
                ),
            ));
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        2 * self.group_split
    }

    /// Eigen-decomposition of one pair's Hessian, slowest mode first. Each
    /// entry is a curvature and its unit eigenvector as `[n, s]` components.
    pub fn pair_modes(&self) -> [(f64, [f64; 2]); 2] {
        let (a, b, c) = (self.soft_scale, self.stiff_scale, self.coupling);
        let mid = 0.5 * (a + b);
        let radius = (0.25 * (a - b) * (a - b) + c * c).sqrt();
        let mode = |lambda: f64, axis: [f64; 2]| {
            if c == 0.0 {
                return (lambda, axis);
            }
            let (vn, vs) = (c, lambda - a);
            let norm = vn.hypot(vs);
            (lambda, [vn / norm, vs / norm])
        };
        let (n_axis, s_axis) = ([1.0, 0.0], [0.0, 1.0]);
        let (slow_axis, fast_axis) = if a <= b {
            (n_axis, s_axis)
        } else {
            (s_axis, n_axis)
        };
        [mode(mid - radius, slow_axis), mode(mid + radius, fast_axis)]
    }

    /// The group that dominates the slowest mode, i.e. the one gradient
    /// descent settles last. Ties go to the n-group.
    pub fn slow_group(&self) -> SpringGroup {
        let [(_, [n, s]), _] = self.pair_modes();
        if n.abs() >= s.abs() {
            SpringGroup::N
        } else {
            SpringGroup::S
        }
    }

    /// The joint minimiser `(b, …, b, a, …, a)`.
    pub fn center(&self) -> Vec<f64> {
        let k = self.group_split;
        let mut theta = vec![self.n_center; 2 * k];
        theta[k..].fill(self.s_center);
        theta
    }
}

pub fn eval_coupled_spring(theta: &[f64], params: &CoupledSpringParams) -> Result<f64> {
    params.validate()?;
    check_input(theta, params.dimension())?;
    let (n, s) = theta.split_at(params.group_split);
    Ok(n.iter()
        .zip(s)
        .map(|(&ni, &si)| {
            let dn = ni - params.n_center;
            let ds = si - params.s_center;
            0.5 * params.stiff_scale * ds * ds
                + 0.5 * params.soft_scale * dn * dn
                + params.coupling * dn * ds
        })
        .sum())
}

pub fn grad_coupled_spring(theta: &[f64], params: &CoupledSpringParams) -> Result<Vec<f64>> {
    params.validate()?;
    check_input(theta, params.dimension())?;
    let k = params.group_split;
    let mut g = vec![0.0; 2 * k];
    for i in 0..k {
        let dn = theta[i] - params.n_center;
        let ds = theta[k + i] - params.s_center;
        g[i] = params.soft_scale * dn + params.coupling * ds;
        g[k + i] = params.stiff_scale * ds + params.coupling * dn;
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoupledSpring {
    params: CoupledSpringParams,
}

impl CoupledSpring {
    pub fn new(params: CoupledSpringParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { params })
    }

    pub fn params(&self) -> &CoupledSpringParams {
        &self.params
    }

    /// Loss carried by each group alone, ignoring the cross term.
    pub fn group_losses(&self, theta: &[f64]) -> Result<(f64, f64)> {
        check_input(theta, self.params.dimension())?;
        let (n, s) = theta.split_at(self.params.group_split);
        let n_loss = n
            .iter()
            .map(|x| 0.5 * self.params.soft_scale * (x - self.params.n_center).powi(2))
            .sum();
        let s_loss = s
            .iter()
            .map(|x| 0.5 * self.params.stiff_scale * (x - self.params.s_center).powi(2))
            .sum();
        Ok((n_loss, s_loss))
    }
}

impl Landscape for CoupledSpring {
    fn name(&self) -> &str {
        "coupled-spring"
    }

    fn dimension(&self) -> usize {
        self.params.dimension()
    }

    fn eval(&self, theta: &[f64]) -> Result<f64> {
        eval_coupled_spring(theta, &self.params)
    }

    fn grad(&self, theta: &[f64]) -> Result<Vec<f64>> {
        grad_coupled_spring(theta, &self.params)
    }

    fn known_minimum(&self) -> Option<(Vec<f64>, f64)> {
        Some((self.params.center(), 0.0))
    }

    /// The origin.
    fn default_start(&self) -> Vec<f64> {
        vec![0.0; self.params.dimension()]
    }
}
