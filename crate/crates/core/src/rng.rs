//! Seed derivation for independent random streams.
//!
//! Every stochastic routine takes a single root seed. Sub-streams (one per
//! repeat, replica, instance or sample) are derived by folding the stream
//! path into the root with the SplitMix64 finaliser:
//!
//! ```text
//! h = root
//! for each component c in path: h = splitmix64(h ^ splitmix64(c + GOLDEN))
//! ```
//!
//! The derivation depends only on the path, never on scheduling, so serial
//! and multi-threaded execution see the same numbers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator used everywhere in the crate.
pub type Rng = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive the seed of the stream addressed by `path` under `root`.
pub fn derive_seed(root: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(root, |h, &c| splitmix64(h ^ splitmix64(c.wrapping_add(GOLDEN))))
}

/// Construct the generator for the stream addressed by `path` under `root`.
pub fn stream(root: u64, path: &[u64]) -> Rng {
    Rng::seed_from_u64(derive_seed(root, path))
}

/// Stream tags so different consumers of one root never collide.
pub mod tag {
    pub const REPEAT: u64 = 1;
    pub const REPLICA: u64 = 2;
    pub const SWAP: u64 = 3;
    pub const INIT: u64 = 4;
    pub const INSTANCE: u64 = 5;
    pub const SAMPLE: u64 = 6;
    pub const LEVEL: u64 = 7;
    pub const KMEANS: u64 = 8;
}
