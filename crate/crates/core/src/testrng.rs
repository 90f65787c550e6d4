//! Seeded random inputs for the unit tests. Deterministic across runs and
//! platforms so every property sweep is reproducible.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::qmat::Herm2;

pub struct TestRng {
    inner: StdRng,
}

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng {
            inner: StdRng::seed_from_u64(seed),
        }
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        self.inner.gen_range(lo..hi)
    }

    /// Random Hermitian matrix with entries on the scale of `scale`.
    pub fn herm(&mut self, scale: f64) -> Herm2 {
        Herm2::new(
            self.range(-scale, scale),
            self.range(-scale, scale),
            Complex64::new(self.range(-scale, scale), self.range(-scale, scale)),
        )
    }

    /// Random density operator: uniform direction in the Bloch ball with
    /// radius biased toward the boundary.
    pub fn state(&mut self) -> Herm2 {
        let r = self.bloch_point();
        Herm2::from_bloch(r)
    }

    /// Random point of the closed Bloch ball.
    pub fn bloch_point(&mut self) -> [f64; 3] {
        loop {
            let x = self.range(-1.0, 1.0);
            let y = self.range(-1.0, 1.0);
            let z = self.range(-1.0, 1.0);
            if x * x + y * y + z * z <= 1.0 {
                return [x, y, z];
            }
        }
    }
}
