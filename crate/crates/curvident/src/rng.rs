//! Deterministic pseudo-random numbers.
//!
//! Every randomized trial in this crate is reproducible from a `u64` seed:
//! reruns with the same arguments produce byte-identical reports. We use
//! SplitMix64, which is trivial to pin down and has no external dependency
//! whose stream could change underneath us.

use crate::scalar::{rat, Rational};

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 generator.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Independent stream for `(seed, stream)`, used to give each trial its
    /// own reproducible generator.
    pub fn substream(seed: u64, stream: u64) -> Self {
        let mut mixer = Self::new(seed ^ stream.wrapping_mul(GOLDEN));
        mixer.next_u64();
        mixer
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` (`bound > 0`).
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// Small rational with numerator in `[-9, 9]` and denominator 10.
    pub fn small_rational(&mut self) -> Rational {
        rat(self.int_in(-9, 9), 10)
    }
}
