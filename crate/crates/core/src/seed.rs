//! Process-wide seed for the randomized routines: root finding over `F_p` and the
//! sampling of singular points on plane sections.

use std::sync::atomic::{AtomicU64, Ordering};

pub const DEFAULT_SEED: u64 = 0x5eed_0f_2007;

static SEED: AtomicU64 = AtomicU64::new(DEFAULT_SEED);

pub fn set_seed(seed: u64) {
    SEED.store(seed, Ordering::Relaxed);
}

pub fn seed() -> u64 {
    SEED.load(Ordering::Relaxed)
}
