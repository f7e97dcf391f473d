//! Named, independently seeded RNG streams.
//!
//! Every random decision in the crate draws from a stream derived from
//! `(master_seed, path…)` where the path names the decision site, e.g.
//! `stream(seed, &["generate", "bag07"])`. Streams are independent of
//! each other and of scheduling, which is what makes per-bag generation
//! and per-item augmentation safe to parallelize without changing the
//! output.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Derive a deterministic RNG for the given seed and stream path.
pub fn stream(master_seed: u64, path: &[&str]) -> ChaCha8Rng {
    let mut hasher = Sha256::new();
    hasher.update(master_seed.to_le_bytes());
    for part in path {
        hasher.update([0x1f]); // unit separator, keeps ["ab","c"] != ["a","bc"]
        hasher.update(part.as_bytes());
    }
    let digest = hasher.finalize();
    let mut seed = [0u8; 32];
    seed.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(seed)
}

/// Hex digest identifying a stream position; stored in checkpoints as a
/// provenance fingerprint.
pub fn stream_digest(master_seed: u64, path: &[&str]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(master_seed.to_le_bytes());
    for part in path {
        hasher.update([0x1f]);
        hasher.update(part.as_bytes());
    }
    hex(&hasher.finalize())
}

pub(crate) fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
