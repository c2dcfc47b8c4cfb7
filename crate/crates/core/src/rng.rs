//! Seed derivation for reproducible, scheduling-independent substreams.
//!
//! Every random draw in the crate comes from a ChaCha8 generator keyed by a
//! seed derived from the user seed and a path of indices (domain, trial,
//! snapshot). Two calls with the same path always see the same stream, no
//! matter which thread runs them or in which order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Domain tags keep unrelated experiment stages on disjoint streams.
pub mod domain {
    pub const TRIALS: u64 = 0x7472_6961_6c73;
    pub const CALIBRATION: u64 = 0x6361_6c69_62;
    pub const SURROGATE: u64 = 0x7375_7272;
    pub const EQUIVALENCE: u64 = 0x6571_7569_76;
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a child seed from `seed` and `index`.
pub fn derive(seed: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ index.wrapping_mul(0xd1b5_4a32_d192_ed03))
}

/// Derives a seed along a path of indices.
pub fn derive_path(seed: u64, path: &[u64]) -> u64 {
    path.iter().fold(seed, |s, &i| derive(s, i))
}

pub fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
