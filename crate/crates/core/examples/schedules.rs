//! The step-drop and per-iteration decay schedules, epoch by epoch.
//!
//! cargo run --example schedules

use lcam::schedules::{step_drop_lr, DecayMode, ScheduleKind, ScheduleState};

fn main() -> lcam::Result<()> {
    for epoch in [0, 29, 30, 59, 60, 89, 90, 149] {
        println!(
            "step-drop  epoch {epoch:>3}: lr = {}",
            step_drop_lr(epoch, 0.1, &[30, 60, 90], 0.2)?
        );
    }

    let iterations_per_epoch = 390;
    let kind = ScheduleKind::PerIterationDecay {
        base_lr: 0.1,
        warmup_epochs: 30,
        decay: 0.99985,
        mode: DecayMode::ClosedForm,
    };
    let mut state = ScheduleState::new(kind, iterations_per_epoch)?;
    while state.epoch() < 121 {
        if state.iteration_in_epoch() == 0 && state.epoch() % 15 == 0 {
            println!(
                "decay      epoch {:>3}: lr = {:.6e} (iteration {})",
                state.epoch(),
                state.lr(),
                state.global_iteration()
            );
        }
        state.advance();
    }
    Ok(())
}
