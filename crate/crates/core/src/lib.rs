//! Loss-controlled asymmetric momentum (LCAM) and friends.
//!
//! LCAM is SGD with heavy-ball momentum whose coefficient is picked every
//! iteration from two values: one while the minibatch loss sits below its
//! running mean (the *sparse* phase), another while it sits at or above it
//! (the *non-sparse* phase). The crate contains:
//!
//! - [`optimizers`]: LCAM, SGD with momentum, AdaGrad and Adam over flat
//!   parameter vectors, plus the loss-phase tracker.
//! - [`landscapes`]: quadratic, saddle, Rosenbrock and a two-group coupled
//!   spring objective, each with analytic gradients and a finite-difference
//!   checker.
//! - [`tinynet`]: a ReLU MLP with manual backprop and synthetic datasets.
//! - [`schedules`]: constant, step-drop and per-iteration exponential decay.
//! - [`harness`]: TOML-configured deterministic runs, CSV traces, four-group
//!   presets, sweeps and comparison reports.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod error;
pub mod harness;
pub mod landscapes;
pub mod optimizers;
pub mod rng;
pub mod schedules;
pub mod tinynet;

pub use error::{Error, Result};
