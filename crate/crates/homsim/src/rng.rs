//! Deterministic random-stream derivation.
//!
//! One master seed; every independent consumer (a trial, an apparatus within
//! a trial, a sweep point) gets its own ChaCha stream addressed by index, so
//! results do not depend on evaluation order.

use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

/// Derive the ChaCha stream `stream` of the generator seeded by `seed`.
pub fn derive(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
