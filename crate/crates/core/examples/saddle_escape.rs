//! Leaving the saddle of ½(x² − y²) + ¼y⁴ from just off its stable manifold.
//! Counts the iterations until the loss drops below −0.2 (the minima sit at
//! −0.25) for fixed momentum and both asymmetric settings.
//!
//! cargo run --example saddle_escape

use lcam::landscapes::{Landscape, Saddle};
use lcam::optimizers::{
    lcam_step, LcamConfig, MomentumState, ParameterVector, PhaseTracker, TrackerMode,
};

fn escape_iterations(f: &Saddle, config: &LcamConfig) -> lcam::Result<Option<usize>> {
    let mut theta = ParameterVector::new(f.default_start())?;
    let mut state = MomentumState::new(theta.len());
    let mut tracker = PhaseTracker::new(TrackerMode::Window(20))?;
    for t in 0..20_000 {
        let loss = f.eval(&theta)?;
        if loss < -0.2 {
            return Ok(Some(t));
        }
        let g = f.grad(&theta)?;
        lcam_step(&mut theta, &g, &mut state, &mut tracker, 0.01, config, loss)?;
    }
    Ok(None)
}

fn main() -> lcam::Result<()> {
    let f = Saddle::new(2)?;
    println!("start {:?}", f.default_start());
    for (label, bs, bn) in [
        ("fixed 0.9", 0.9, 0.9),
        ("fixed 0.95", 0.95, 0.95),
        ("sparse-accel", 0.95, 0.9),
        ("nonsparse-accel", 0.9, 0.95),
    ] {
        let n = escape_iterations(&f, &LcamConfig::new(bs, bn, 0.0)?)?;
        println!("{label:<16} escapes after {n:?} iterations");
    }
    Ok(())
}
