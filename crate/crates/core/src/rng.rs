//! Seeded randomness shared by every sampler in the crate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::Rational;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform integer in `lo..=hi`.
pub fn small_int(rng: &mut SeededRng, lo: i64, hi: i64) -> i64 {
    rng.random_range(lo..=hi)
}

pub fn small_rational(rng: &mut SeededRng, bound: i64) -> Rational {
    Rational::from(small_int(rng, -bound, bound))
}
