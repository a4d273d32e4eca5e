//! Seed derivation. Every random step draws from its own ChaCha stream keyed
//! by the run seed and a fixed tag, so runs replay exactly and subroutines
//! never share a stream.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Child seed for `tag`; distinct tags give unrelated seeds.
pub fn derive(seed: u64, tag: u64) -> u64 {
    splitmix64(seed ^ splitmix64(tag.wrapping_add(0x5851_F42D_4C95_7F2D)))
}

/// Independent generator for `(seed, tag)`.
pub fn stream(seed: u64, tag: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(tag);
    rng
}

/// Tags used by the pipeline; kept in one place so no two steps collide.
pub mod tag {
    pub const SEARCH: u64 = 1;
    pub const SPARSIFY: u64 = 2;
    pub const ATOMS: u64 = 3;
    pub const KARGER: u64 = 4;
    pub const HASH: u64 = 5;
    pub const SKELETON: u64 = 6;
    pub const REPEAT: u64 = 7;
    pub const INSTANCE: u64 = 8;
}
