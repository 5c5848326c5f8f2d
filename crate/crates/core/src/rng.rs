//! Random number sources used by the optimizers.
//!
//! The engines draw every random number through [`RandomSource`] so tests can
//! substitute scripted sources and pin down individual branches.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A stream of uniform variates.
pub trait RandomSource {
    /// Uniform draw on `[0, 1)`.
    fn next_f64(&mut self) -> f64;

    /// Uniform index in `0..n`. `n` must be positive.
    fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        let i = (self.next_f64() * n as f64) as usize;
        i.min(n - 1)
    }

    /// Uniform draw on `[lo, hi)`; returns `lo` when the interval is empty.
    fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Bernoulli trial that succeeds with probability `p`.
    fn flip(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }
}

/// Portable seeded generator (ChaCha8), identical output on every platform.
#[derive(Debug, Clone)]
pub struct SeededRng(ChaCha8Rng);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(ChaCha8Rng::seed_from_u64(seed))
    }
}

impl RandomSource for SeededRng {
    fn next_f64(&mut self) -> f64 {
        self.0.gen::<f64>()
    }
}

impl<R: RandomSource + ?Sized> RandomSource for &mut R {
    fn next_f64(&mut self) -> f64 {
        (**self).next_f64()
    }
}

/// Derives an independent 64-bit seed from a base seed and a list of
/// discriminators (step index, retry attempt, ...) with the SplitMix64
/// finalizer.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    let mut h = base;
    for &p in parts {
        h = splitmix(h ^ splitmix(p.wrapping_add(0x9E37_79B9_7F4A_7C15)));
    }
    splitmix(h)
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
