//! The four momentum groups on the coupled-spring landscape: fixed 0.9, fixed
//! 0.95, extra momentum in the sparse phase, extra momentum in the non-sparse
//! phase. Traces and a report go to `four-group/coupled-spring/`.
//!
//! cargo run --release --example four_group_coupled_spring

use lcam::harness::four_group_command;
use lcam::landscapes::{CoupledSpringParams, SpringGroup};

fn main() -> lcam::Result<()> {
    let spring = CoupledSpringParams::default();
    let [(slow, v), (fast, _)] = spring.pair_modes();
    println!(
        "pair curvatures {slow:.3} and {fast:.3}; the slow mode is {:.0}% n-group, so the {} group settles last",
        100.0 * v[0] * v[0],
        match spring.slow_group() {
            SpringGroup::N => "n",
            SpringGroup::S => "s",
        }
    );

    let result = four_group_command("coupled-spring", 0)?;
    print!("{}", result.report);
    println!("report written to {}", result.report_path.display());
    Ok(())
}
