//! Reproducible random streams.
//!
//! Restart `i` of a run with master seed `s` draws from ChaCha8 (the
//! `rand_chacha` 0.3 implementation) keyed by `ChaCha8Rng::seed_from_u64(s)`
//! (the `rand_core` 0.6 PCG32 seed expansion) with stream id `i`. Bounded
//! integers use rejection sampling on `next_u64`, and shuffles are
//! Fisher–Yates from the back, so results depend only on the ChaCha8 word
//! stream and are identical across platforms.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub type Stream = ChaCha8Rng;

pub fn derive_stream(master_seed: u64, index: u64) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// Uniform integer in `0..n`; `n` must be positive.
pub fn below(rng: &mut impl RngCore, n: usize) -> usize {
    assert!(n > 0, "empty range");
    let n = n as u64;
    // largest multiple of n that fits, to avoid modulo bias
    let zone = u64::MAX - (u64::MAX - n + 1) % n;
    loop {
        let v = rng.next_u64();
        if v <= zone {
            return (v % n) as usize;
        }
    }
}

pub fn shuffle<T>(rng: &mut impl RngCore, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = below(rng, i + 1);
        items.swap(i, j);
    }
}
