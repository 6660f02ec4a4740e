//! Seeded pseudo-random numbers.
//!
//! The generator is SplitMix64: a 64-bit additive counter scrambled by two
//! shift-xor-multiply rounds. The integer stream is fixed by the constants
//! below, so a seed pins the whole experiment. Normal deviates come from the
//! Box-Muller transform applied to consecutive uniforms; the second deviate
//! of each pair is cached and returned on the next call.

use super::Vector;

/// SplitMix64 state plus the cached Box-Muller spare.
#[derive(Clone, Debug)]
pub struct SeededRng {
    state: u64,
    spare_normal: Option<f64>,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self {
            state: seed,
            spare_normal: None,
        }
    }

    /// Derive an independent stream for a sub-task. Mixes the label through
    /// one scramble round so sibling streams do not overlap for small labels.
    pub fn substream(&self, label: u64) -> SeededRng {
        let mut rng = SeededRng::new(self.state ^ label.wrapping_mul(0xA076_1D64_78BD_642F));
        rng.next_u64();
        rng
    }

    /// SplitMix64 step: counter += 0x9E3779B97F4A7C15, then two rounds of
    /// xor-shift-multiply (0xBF58476D1CE4E5B9, 0x94D049BB133111EB).
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `(0, 1]`; safe to feed into `ln`.
    pub fn uniform_open(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Standard normal deviate via Box-Muller.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = self.uniform_open();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare_normal = Some(r * theta.sin());
        r * theta.cos()
    }

    pub fn normal_vector(&mut self, dim: usize) -> Vector {
        Vector::from_fn(dim, |_| self.normal())
    }

    /// Uniformly random index in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (self.uniform() * n as f64) as usize % n
    }
}

/// `d` independent standard normal draws, advancing `rng`.
pub fn gaussian_sample(rng: &mut SeededRng, dim: usize) -> Vector {
    rng.normal_vector(dim)
}
