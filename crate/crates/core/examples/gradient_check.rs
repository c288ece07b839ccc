//! Analytic gradients of every landscape and of the MLP against central
//! differences.
//!
//! cargo run --example gradient_check

use lcam::harness::grad_check;
use lcam::landscapes::{central_difference, gradient_error, Landscape, Saddle};

fn main() -> lcam::Result<()> {
    for row in grad_check(None, 20, 1)? {
        println!(
            "{:<18} max rel {:.2e}  max abs {:.2e}  (tol {:.0e}) {}",
            row.target,
            row.max_relative,
            row.max_absolute,
            row.tolerance,
            if row.passed() { "ok" } else { "FAIL" }
        );
    }

    // The same check by hand at one point.
    let saddle = Saddle::new(2)?;
    let theta = [0.3, -0.7];
    let analytic = saddle.grad(&theta)?;
    let numeric = central_difference(|t| saddle.eval(t), &theta, 1e-5)?;
    let err = gradient_error(&analytic, &numeric, 1e-6);
    println!("saddle at {theta:?}: analytic {analytic:?}, numeric {numeric:?}, {err:?}");
    Ok(())
}
