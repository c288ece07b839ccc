//! Analytic-versus-numerical gradient checks for every landscape and the MLP.

use rand::Rng;

use crate::error::Result;
use crate::landscapes::{central_difference, gradient_error, LandscapeId};
use crate::rng::{self, Domain};
use crate::tinynet::{generate_two_moons, init_mlp, Split};

/// Finite-difference step used by the checks.
pub const FD_STEP: f64 = 1e-5;
/// Smallest gradient magnitude used as a relative-error denominator.
pub const SCALE_FLOOR: f64 = 1e-6;
pub const LANDSCAPE_REL_TOL: f64 = 1e-5;
pub const MLP_REL_TOL: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq)]
pub struct GradCheckRow {
    pub target: String,
    pub points: usize,
    pub max_relative: f64,
    pub max_absolute: f64,
    pub tolerance: f64,
}

impl GradCheckRow {
    pub fn passed(&self) -> bool {
        self.max_relative <= self.tolerance
    }
}

/// Check one landscape at `points` uniform random points in `[-2, 2]^d`.
pub fn check_landscape(id: LandscapeId, points: usize, seed: u64) -> Result<GradCheckRow> {
    let landscape = id.build_default();
    let mut rng = rng::stream(seed, Domain::Probe, id as u64);
    let mut row = GradCheckRow {
        target: id.to_string(),
        points,
        max_relative: 0.0,
        max_absolute: 0.0,
        tolerance: LANDSCAPE_REL_TOL,
    };
    for _ in 0..points {
        let theta: Vec<f64> = (0..landscape.dimension())
            .map(|_| rng.random_range(-2.0..2.0))
            .collect();
        let analytic = landscape.grad(&theta)?;
        let numeric = central_difference(|t| landscape.eval(t), &theta, FD_STEP)?;
        let err = gradient_error(&analytic, &numeric, SCALE_FLOOR);
        row.max_relative = row.max_relative.max(err.max_relative);
        row.max_absolute = row.max_absolute.max(err.max_absolute);
    }
    Ok(row)
}

/// Check MLP backprop on a two-moons batch: `points` random parameter vectors,
/// 30 random coordinates each.
pub fn check_mlp(layer_sizes: &[usize], points: usize, seed: u64) -> Result<GradCheckRow> {
    let data = generate_two_moons(64, 0.1, seed)?;
    let (features, labels) = data.gather(data.split_indices(Split::Train));
    let mut row = GradCheckRow {
        target: format!("mlp{layer_sizes:?}"),
        points,
        max_relative: 0.0,
        max_absolute: 0.0,
        tolerance: MLP_REL_TOL,
    };
    let mut rng = rng::stream(seed, Domain::Probe, 1000);
    for p in 0..points {
        let model = init_mlp(layer_sizes, seed.wrapping_add(p as u64))?;
        let params = model.params().to_vec();
        let (_, analytic) = model.forward_loss(&features, &labels)?;
        let coords: Vec<usize> = (0..30.min(params.len()))
            .map(|_| rng.random_range(0..params.len()))
            .collect();
        let mut a = Vec::with_capacity(coords.len());
        let mut n = Vec::with_capacity(coords.len());
        for &i in &coords {
            let numeric = central_difference(
                |x| {
                    let mut probe = params.clone();
                    probe[i] = x[0];
                    Ok(model.loss_and_grad_at(&probe, &features, &labels)?.0)
                },
                &[params[i]],
                FD_STEP,
            )?;
            a.push(analytic[i]);
            n.push(numeric[0]);
        }
        let err = gradient_error(&a, &n, SCALE_FLOOR);
        row.max_relative = row.max_relative.max(err.max_relative);
        row.max_absolute = row.max_absolute.max(err.max_absolute);
    }
    Ok(row)
}

/// All landscapes (or just `only`) plus the default MLP shapes.
pub fn grad_check(
    only: Option<LandscapeId>,
    points: usize,
    seed: u64,
) -> Result<Vec<GradCheckRow>> {
    let ids: Vec<LandscapeId> = match only {
        Some(id) => vec![id],
        None => LandscapeId::ALL.to_vec(),
    };
    let mut rows = ids
        .into_iter()
        .map(|id| check_landscape(id, points, seed))
        .collect::<Result<Vec<_>>>()?;
    if only.is_none() {
        rows.push(check_mlp(&[2, 8, 2], points, seed)?);
        rows.push(check_mlp(&[2, 16, 16, 2], points, seed)?);
    }
    Ok(rows)
}
