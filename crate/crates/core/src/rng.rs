//! Seeded random streams.
//!
//! All randomness comes from ChaCha8 keyed by a 64-bit seed. Independent
//! consumers of one seed read from distinct ChaCha streams, so graph structure
//! does not change when only the weight scheme does.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Graph structure (edges, rewiring, pairings).
pub const STRUCTURE_STREAM: u64 = 0;
/// Edge weights.
pub const WEIGHT_STREAM: u64 = 1;
/// Vertex count for families with ranged sizes.
pub const SIZE_STREAM: u64 = 2;
/// Solver-side randomness: initial assignment, then any per-step sampling.
pub const SEARCH_STREAM: u64 = 3;
/// Replay sampling and exploration during training.
pub const TRAINING_STREAM: u64 = 4;

pub fn stream(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
