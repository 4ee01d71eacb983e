//! Seeded random streams.
//!
//! Every randomized operation draws from ChaCha20 keyed by a 64-bit seed.
//! Independent uses of one seed are separated by ChaCha stream numbers:
//! stream 0 draws vertices, stream 1 draws edges, and further consumers use
//! their own numbers, so replaying edges never disturbs the vertex draws.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub const VERTEX_STREAM: u64 = 0;
pub const EDGE_STREAM: u64 = 1;
pub const TUPLE_STREAM: u64 = 2;
pub const CENSUS_STREAM: u64 = 3;
pub const PERMUTATION_STREAM: u64 = 4;

pub type Stream = ChaCha20Rng;

pub fn stream(seed: u64, number: u64) -> Stream {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(number);
    rng
}

/// Derives a seed from two others (SplitMix64 finalizer over both).
pub fn mix(a: u64, b: u64) -> u64 {
    let mut z = a ^ b.rotate_left(32) ^ 0x9e37_79b9_7f4a_7c15;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Uniform on `[0, 1)`.
pub fn uniform(rng: &mut Stream) -> f64 {
    rng.gen::<f64>()
}

/// Standard normal by Box–Muller, one value per pair of uniforms.
pub fn gaussian(rng: &mut Stream) -> f64 {
    let u1 = 1.0 - uniform(rng);
    let u2 = uniform(rng);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}
