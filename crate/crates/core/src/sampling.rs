//! Seeded rational sampling shared by the randomized checks.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactpoly::Rational;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Numerator uniform in `-10..=10`, denominator uniform in `1..=10`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let num: i64 = rng.gen_range(-10..=10);
    let den: i64 = rng.gen_range(1..=10);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn small_integer<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    Rational::from_integer(BigInt::from(rng.gen_range(-bound..=bound)))
}

pub fn rational_vector<R: Rng>(rng: &mut R, len: usize) -> Vec<Rational> {
    (0..len).map(|_| small_rational(rng)).collect()
}
