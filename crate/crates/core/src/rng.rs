//! Seeded 64-bit linear congruential generator.
//!
//! Constants are Knuth's MMIX multiplier and increment. Draws use only the
//! high 32 bits of each state, since the low bits of a power-of-two LCG have
//! short periods. The sequence is fully determined by the seed on every
//! platform.

use crate::gf2::BitVector;

pub const MULTIPLIER: u64 = 6_364_136_223_846_793_005;
pub const INCREMENT: u64 = 1_442_695_040_888_963_407;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_state(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        self.state
    }

    pub fn next_u32(&mut self) -> u32 {
        (self.next_state() >> 32) as u32
    }

    pub fn next_u64(&mut self) -> u64 {
        let hi = u64::from(self.next_u32());
        let lo = u64::from(self.next_u32());
        (hi << 32) | lo
    }

    pub fn next_bool(&mut self) -> bool {
        self.next_state() >> 63 == 1
    }

    /// Uniform-ish draw from `0..bound` by multiply-shift.
    ///
    /// # Panics
    ///
    /// Panics if `bound` is zero or does not fit in 32 bits.
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(
            bound > 0 && bound <= u32::MAX as usize,
            "bound out of range"
        );
        ((u64::from(self.next_u32()) * bound as u64) >> 32) as usize
    }

    pub fn vector(&mut self, len: usize) -> BitVector {
        let words = (0..len.div_ceil(64)).map(|_| self.next_u64()).collect();
        BitVector::from_words(len, words)
    }

    pub fn nonzero_vector(&mut self, len: usize) -> BitVector {
        assert!(len > 0, "no nonzero vectors of length 0");
        loop {
            let v = self.vector(len);
            if !v.is_zero() {
                return v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_is_pinned() {
        let mut rng = Lcg::new(0);
        assert_eq!(rng.next_state(), INCREMENT);
        assert_eq!(
            rng.next_state(),
            INCREMENT.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT)
        );
    }

    #[test]
    fn same_seed_same_stream() {
        let mut a = Lcg::new(42);
        let mut b = Lcg::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        assert_eq!(a.vector(130), b.vector(130));
    }

    #[test]
    fn below_stays_in_range() {
        let mut rng = Lcg::new(7);
        let mut seen = [false; 5];
        for _ in 0..1000 {
            seen[rng.below(5)] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }
}
