//! LCAM against fixed-momentum SGD on the 2-d Rosenbrock valley.
//!
//! With both momenta equal LCAM is plain SGD with momentum, bit for bit.
//! With unequal momenta the iterates part ways.
//!
//! cargo run --example sgd_vs_lcam_rosenbrock

use lcam::landscapes::{Landscape, Rosenbrock};
use lcam::optimizers::{
    lcam_step, sgd_momentum_step, LcamConfig, MomentumState, ParameterVector, PhaseTracker,
    TrackerMode,
};

const LR: f64 = 5e-4;
const STEPS: usize = 5000;

fn run_sgd(f: &Rosenbrock, beta: f64) -> lcam::Result<Vec<f64>> {
    let mut theta = ParameterVector::new(f.default_start())?;
    let mut state = MomentumState::new(theta.len());
    for _ in 0..STEPS {
        let g = f.grad(&theta)?;
        sgd_momentum_step(&mut theta, &g, &mut state, LR, beta, 0.0)?;
    }
    Ok(theta.into_inner())
}

fn run_lcam(f: &Rosenbrock, config: &LcamConfig) -> lcam::Result<(Vec<f64>, usize)> {
    let mut theta = ParameterVector::new(f.default_start())?;
    let mut state = MomentumState::new(theta.len());
    let mut tracker = PhaseTracker::new(TrackerMode::Window(50))?;
    let mut switches = 0;
    let mut last = None;
    for _ in 0..STEPS {
        let loss = f.eval(&theta)?;
        let g = f.grad(&theta)?;
        let step = lcam_step(&mut theta, &g, &mut state, &mut tracker, LR, config, loss)?;
        if last.is_some_and(|p| p != step.phase) {
            switches += 1;
        }
        last = Some(step.phase);
    }
    Ok((theta.into_inner(), switches))
}

fn main() -> lcam::Result<()> {
    let f = Rosenbrock::new(2)?;

    let sgd = run_sgd(&f, 0.9)?;
    let (collapsed, _) = run_lcam(&f, &LcamConfig::new(0.9, 0.9, 0.0)?)?;
    println!("sgd(0.9)         θ = {sgd:?}  f = {:.6e}", f.eval(&sgd)?);
    println!(
        "lcam(0.9, 0.9)   θ = {collapsed:?}  identical: {}",
        sgd == collapsed
    );

    for (bs, bn) in [(0.95, 0.9), (0.9, 0.95)] {
        let (theta, switches) = run_lcam(&f, &LcamConfig::new(bs, bn, 0.0)?)?;
        println!(
            "lcam({bs}, {bn})  θ = {theta:?}  f = {:.6e}  phase switches = {switches}",
            f.eval(&theta)?
        );
    }
    Ok(())
}
