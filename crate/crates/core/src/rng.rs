//! Seeded random streams.
//!
//! Every random draw in the crate comes from ChaCha8 (`rand_chacha`), seeded
//! with the run seed via `seed_from_u64` and separated into independent
//! streams with ChaCha's 64-bit stream selector. A stream id packs a domain
//! tag in the high 16 bits and an index (epoch, layer, ...) in the low 48 bits,
//! so e.g. the minibatch order of epoch 7 never depends on how many gradient
//! noise samples were drawn before it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent purposes that draw randomness from the same run seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u16)]
pub enum Domain {
    Init = 1,
    Data = 2,
    Split = 3,
    Shuffle = 4,
    GradNoise = 5,
    Probe = 6,
}

const INDEX_MASK: u64 = (1 << 48) - 1;

/// A ChaCha8 generator for `(seed, domain, index)`.
pub fn stream(seed: u64, domain: Domain, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((domain as u64) << 48) | (index & INDEX_MASK));
    rng
}
