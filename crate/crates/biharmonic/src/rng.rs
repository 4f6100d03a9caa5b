//! Seeded pseudo-random numbers for the verification suites.
//!
//! SplitMix64 is used so that any other implementation of the same suites
//! can reproduce the exact sequences from the seed alone: the state update
//! adds `0x9E3779B97F4A7C15` and the output mixer is the standard
//! xor-shift/multiply chain (`0xBF58476D1CE4E5B9`, `0x94D049BB133111EB`).
//! Uniform doubles take the top 53 bits of the output.

/// SplitMix64 generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[-1, 1)`.
    pub fn next_symmetric(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }

    /// Vector of `len` uniform values in `[-1, 1)`.
    pub fn symmetric_vec(&mut self, len: usize) -> Vec<f64> {
        (0..len).map(|_| self.next_symmetric()).collect()
    }

    /// Vector of `len` uniform values in `[0, 1)`.
    pub fn unit_vec(&mut self, len: usize) -> Vec<f64> {
        (0..len).map(|_| self.next_f64()).collect()
    }
}
