//! Train the small ReLU MLP on two moons with a hand-written LCAM loop.
//!
//! cargo run --release --example tinynet_two_moons

use lcam::optimizers::{lcam_step, LcamConfig, MomentumState, PhaseTracker, TrackerMode};
use lcam::rng::{stream, Domain};
use lcam::tinynet::{evaluate, generate_two_moons, init_mlp, Split};
use rand::seq::SliceRandom;

fn main() -> lcam::Result<()> {
    let seed = 3;
    let data = generate_two_moons(500, 0.1, seed)?;
    let mut model = init_mlp(&[2, 16, 16, 2], seed)?;
    let config = LcamConfig::new(0.9, 0.95, 5e-4)?;
    let mut momentum = MomentumState::new(model.params().len());
    let batch = 32;
    let train = data.split_indices(Split::Train).to_vec();
    let mut tracker = PhaseTracker::new(TrackerMode::Window(train.len().div_ceil(batch)))?;

    for epoch in 0..60 {
        let mut order = train.clone();
        order.shuffle(&mut stream(seed, Domain::Shuffle, epoch));
        let mut sum = 0.0;
        for rows in order.chunks(batch) {
            let (x, y) = data.gather(rows);
            let (loss, grad) = model.forward_loss(&x, &y)?;
            lcam_step(
                model.params_mut(),
                &grad,
                &mut momentum,
                &mut tracker,
                0.1,
                &config,
                loss,
            )?;
            sum += loss;
        }
        if epoch % 10 == 9 {
            println!(
                "epoch {epoch:>2}: mean batch loss {:.4}, test error {:.3}",
                sum / order.len().div_ceil(batch) as f64,
                evaluate(&model, &data, Split::Test)?
            );
        }
    }
    Ok(())
}
