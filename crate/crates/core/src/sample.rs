//! Seeded sampling of small rational parameters.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ring::{ratio, Rational};

/// Default seed used when none is given, so runs are reproducible.
pub const DEFAULT_SEED: u64 = 0x5eed_d1b7;

/// Deterministic source of small nonzero rationals.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A rational `n/d` with `1 <= |n| <= 9`, `1 <= d <= 4`.
    pub fn nonzero(&mut self) -> Rational {
        let n: i64 = self.rng.gen_range(1..=9);
        let d: i64 = self.rng.gen_range(1..=4);
        let s = if self.rng.gen_bool(0.5) { -1 } else { 1 };
        ratio(s * n, d)
    }

    /// A rational `n/d` with `|n| <= 9`, possibly zero.
    pub fn any(&mut self) -> Rational {
        let n: i64 = self.rng.gen_range(-9..=9);
        let d: i64 = self.rng.gen_range(1..=4);
        ratio(n, d)
    }

    /// A nonzero integer in `-bound..=bound`.
    pub fn nonzero_int(&mut self, bound: i64) -> Rational {
        loop {
            let n = self.rng.gen_range(-bound..=bound);
            if n != 0 {
                return ratio(n, 1);
            }
        }
    }

    pub fn positive_int(&mut self, bound: i64) -> Rational {
        ratio(self.rng.gen_range(1..=bound), 1)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_repeat() {
        let a: Vec<Rational> = {
            let mut s = Sampler::new(42);
            (0..10).map(|_| s.nonzero()).collect()
        };
        let b: Vec<Rational> = {
            let mut s = Sampler::new(42);
            (0..10).map(|_| s.nonzero()).collect()
        };
        assert_eq!(a, b);
        assert!(a.iter().all(|x| *x != ratio(0, 1)));
    }
}
