//! Regenerate the committed two-moons baseline: fixed momentum 0.9 against
//! LCAM(0.9, 0.95) from `configs/two_moons_{fixed,lcam}.toml`, seed 0.
//!
//! cargo run --release --example two_moons_baseline > crates/core/tests/data/two_moons_baseline.csv

use lcam::harness::{fmt_real, load_config, run_experiment};
use lcam::optimizers::Phase;

fn main() -> lcam::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs");
    println!("label,final_loss,post_warmup_sparse,post_warmup_nonsparse");
    for label in ["fixed", "lcam"] {
        let config = load_config(format!("{dir}/two_moons_{label}.toml"))?;
        let outcome = run_experiment(&config)?;
        let warmup_end = outcome
            .records
            .iter()
            .find(|r| r.epoch > 30)
            .map_or(0, |r| r.global_iteration);
        let post: Vec<_> = outcome
            .records
            .iter()
            .filter(|r| r.global_iteration >= warmup_end)
            .collect();
        let sparse =
            post.iter().filter(|r| r.phase == Phase::Sparse).count() as f64 / post.len() as f64;
        println!(
            "{label},{},{},{}",
            fmt_real(outcome.final_loss.unwrap_or(f64::NAN)),
            fmt_real(sparse),
            fmt_real(1.0 - sparse)
        );
    }
    Ok(())
}
