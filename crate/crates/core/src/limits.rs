//! Process-wide caps on the size of generated posets and enumerations.
//!
//! Flag enumeration is exponential in the arity, so every entry point checks
//! its expected size against these caps before allocating.

use std::sync::atomic::{AtomicU64, Ordering};

static MAX_RELATION_BITS: AtomicU64 = AtomicU64::new(Limits::DEFAULT.max_relation_bits);
static MAX_FLAGS: AtomicU64 = AtomicU64::new(Limits::DEFAULT.max_flags);
static MAX_INDEX_K: AtomicU64 = AtomicU64::new(Limits::DEFAULT.max_index_k as u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Upper bound on `element_count^2`, the size of the dense order matrix.
    pub max_relation_bits: u64,
    pub max_flags: u64,
    /// Largest `k` for which the symbolic index family is built.
    pub max_index_k: usize,
}

impl Limits {
    pub const DEFAULT: Limits = Limits {
        max_relation_bits: 1 << 20,
        max_flags: 2_000_000,
        max_index_k: 8,
    };

    pub const MAX_BOOLEAN_RANK: usize = 20;
    pub const MAX_PARTITION_N: usize = 9;

    pub fn current() -> Limits {
        Limits {
            max_relation_bits: MAX_RELATION_BITS.load(Ordering::Relaxed),
            max_flags: MAX_FLAGS.load(Ordering::Relaxed),
            max_index_k: MAX_INDEX_K.load(Ordering::Relaxed) as usize,
        }
    }

    pub fn install(self) {
        MAX_RELATION_BITS.store(self.max_relation_bits, Ordering::Relaxed);
        MAX_FLAGS.store(self.max_flags, Ordering::Relaxed);
        MAX_INDEX_K.store(self.max_index_k as u64, Ordering::Relaxed);
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits::DEFAULT
    }
}
