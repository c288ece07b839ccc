//! A small ReLU multilayer perceptron with hand-written backpropagation and
//! the synthetic classification sets it trains on.

mod data;
mod mlp;

pub use data::{generate_blobs, generate_two_moons, stratified_split, Dataset, Split};
pub use mlp::{evaluate, init_mlp, Mlp};
