//! Additive white Gaussian noise.
//!
//! Draws come from ChaCha8 (`rand_chacha`) seeded with `seed_from_u64`, and
//! the `StandardNormal` ziggurat sampler of `rand_distr`. Both are portable,
//! so a seed reproduces the same noise on every platform.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `n` standard normal draws from the seeded generator.
pub fn standard_normal<T: Scalar>(n: usize, seed: u64) -> Vec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let g: f64 = StandardNormal.sample(&mut rng);
            T::lit(g)
        })
        .collect()
}

/// `x + σ g`. With `σ = 0` the input is returned unchanged.
pub fn add_gaussian_noise<T: Scalar>(x: &[T], sigma: T, seed: u64) -> Result<Vec<T>> {
    if !(sigma >= T::zero()) || !sigma.is_finite() {
        return Err(Error::param(format!("noise level must be finite and nonnegative, got {sigma}")));
    }
    if sigma == T::zero() {
        return Ok(x.to_vec());
    }
    Ok(x
        .iter()
        .zip(standard_normal::<T>(x.len(), seed))
        .map(|(&v, g)| v + sigma * g)
        .collect())
}
