//! Named seed derivation.
//!
//! All randomness in the crate flows from one master seed through
//! `(purpose, index)` derivation, so every sub-experiment can be reproduced
//! in isolation. Derivation hashes with SHA-256, which keeps streams
//! independent of platform word size and of `rand` internals.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use sha2::{Digest, Sha256};

/// Derive a 32-byte sub-seed from `(master, purpose, index)`.
pub fn derive_seed(master: u64, purpose: &str, index: u64) -> [u8; 32] {
    let mut hasher = Sha256::new();
    hasher.update(master.to_le_bytes());
    hasher.update(purpose.as_bytes());
    hasher.update(index.to_le_bytes());
    hasher.finalize().into()
}

/// Deterministic RNG for the given derivation path.
pub fn rng_for(master: u64, purpose: &str, index: u64) -> ChaCha12Rng {
    ChaCha12Rng::from_seed(derive_seed(master, purpose, index))
}
