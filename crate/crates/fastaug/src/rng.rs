//! Deterministic random numbers.
//!
//! Every random decision in this crate (gate draws, crop offsets,
//! distortion steps, elastic fields) comes from a [`RngStream`], a
//! SplitMix64 generator. The algorithm is fully specified in a handful of
//! lines, so identical seeds produce identical draw sequences across
//! builds, platforms, and processes.

/// Sequential SplitMix64 stream. Single-owner: never share one stream
/// between threads; give each unit of parallel work its own seed.
#[derive(Debug, Clone)]
pub struct RngStream {
    state: u64,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream { state: seed }
    }

    /// Next raw 64-bit draw.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform double in [0, 1) with 53 random bits.
    pub fn uniform_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in [0, n). `n` must be at least 1.
    pub fn uniform_int(&mut self, n: u64) -> u64 {
        assert!(n > 0, "uniform_int requires n >= 1");
        (self.uniform_f64() * n as f64).floor() as u64
    }

    /// Uniform double in [lo, hi).
    pub fn uniform_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.uniform_f64() * (hi - lo)
    }
}

/// Seed from process entropy, for callers that did not pick one. The
/// drawn seed is reported back so the run stays reproducible after the
/// fact.
pub fn entropy_seed() -> u64 {
    use std::collections::hash_map::RandomState;
    use std::hash::{BuildHasher, Hasher};
    use std::time::{SystemTime, UNIX_EPOCH};

    let nanos = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_nanos() as u64)
        .unwrap_or(0);
    let mut h = RandomState::new().build_hasher();
    h.write_u64(nanos);
    h.finish()
}
