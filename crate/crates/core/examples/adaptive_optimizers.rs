//! AdaGrad and Adam next to SGD with momentum on an ill-conditioned quadratic.
//!
//! AdaGrad equalises the two axes by dividing by accumulated squared
//! gradients, so the stiff axis stops dominating the step.
//!
//! cargo run --example adaptive_optimizers

use lcam::landscapes::{Landscape, Quadratic};
use lcam::optimizers::{
    adagrad_step, adam_step, sgd_momentum_step, AdaGradState, AdamState, MomentumState,
    ParameterVector,
};

fn main() -> lcam::Result<()> {
    let f = Quadratic::new(vec![1.0, 100.0])?;
    let start = vec![1.0, 1.0];
    let steps = 200;

    let mut sgd = ParameterVector::new(start.clone())?;
    let mut momentum = MomentumState::new(2);
    let mut ada = ParameterVector::new(start.clone())?;
    let mut ada_state = AdaGradState::new(2);
    let mut adam = ParameterVector::new(start)?;
    let mut adam_state = AdamState::new(2);

    println!(
        "{:>5}  {:>12}  {:>12}  {:>12}",
        "step", "sgd", "adagrad", "adam"
    );
    for t in 0..=steps {
        if t % 40 == 0 {
            println!(
                "{t:>5}  {:>12.4e}  {:>12.4e}  {:>12.4e}",
                f.eval(&sgd)?,
                f.eval(&ada)?,
                f.eval(&adam)?
            );
        }
        let g = f.grad(&sgd)?;
        sgd_momentum_step(&mut sgd, &g, &mut momentum, 0.001, 0.9, 0.0)?;
        let g = f.grad(&ada)?;
        adagrad_step(&mut ada, &g, &mut ada_state, 0.1, 1e-8)?;
        let g = f.grad(&adam)?;
        adam_step(&mut adam, &g, &mut adam_state, 0.01, 0.9, 0.999, 1e-8)?;
    }
    println!("adagrad accumulators: {:?}", ada_state.grad_sq_sum());
    Ok(())
}
