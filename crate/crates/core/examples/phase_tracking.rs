//! How the three mean-loss modes split a noisy, decaying loss curve into
//! sparse (below the mean) and non-sparse (at or above it) iterations.
//!
//! cargo run --example phase_tracking

use lcam::optimizers::{Phase, PhaseTracker, TrackerMode};
use lcam::rng::{stream, Domain};
use rand::Rng;

fn main() -> lcam::Result<()> {
    let mut rng = stream(7, Domain::Probe, 0);
    let losses: Vec<f64> = (0..2000)
        .map(|t| 2.0 * (-(t as f64) / 400.0).exp() + 0.1 + 0.05 * rng.random::<f64>())
        .collect();

    for mode in [
        TrackerMode::Cumulative,
        TrackerMode::Window(50),
        TrackerMode::Ema(0.05),
    ] {
        let mut tracker = PhaseTracker::new(mode)?;
        let mut sparse = [0usize; 4];
        for (t, &loss) in losses.iter().enumerate() {
            let (_, phase) = tracker.observe(loss)?;
            if phase == Phase::Sparse {
                sparse[t / 500] += 1;
            }
        }
        let shares: Vec<String> = sparse
            .iter()
            .map(|s| format!("{:.2}", *s as f64 / 500.0))
            .collect();
        println!(
            "{mode:?}: sparse share per 500-iteration quarter = [{}], final mean {:.4}",
            shares.join(", "),
            tracker.mean_loss().unwrap_or(f64::NAN)
        );
    }
    // The cumulative mean lags a decaying curve more and more, so the loss
    // sits below it almost always. The window and EMA means keep up and the
    // phases keep alternating.
    Ok(())
}
