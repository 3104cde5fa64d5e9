//! Independent seeds for every (run, stream, index) cell so parallel and
//! serial runs draw the same numbers.

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Fold `tags` into `base`. Different tag sequences give unrelated seeds.
pub fn derive_seed(base: u64, tags: &[u64]) -> u64 {
    tags.iter().fold(splitmix64(base), |acc, &t| splitmix64(acc ^ splitmix64(t)))
}

/// Stream tags used by the associative-memory harness.
pub mod stream {
    pub const PATTERNS: u64 = 1;
    pub const INIT: u64 = 2;
    pub const CORRUPT: u64 = 3;
}
