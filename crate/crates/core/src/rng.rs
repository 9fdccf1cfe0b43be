//! Counter-based random substreams.
//!
//! Every random draw in the crate comes from ChaCha8 keyed by the 64-bit
//! user seed (expanded with `SeedableRng::seed_from_u64`) and positioned on
//! a 64-bit stream id. Substreams are addressable by index, so a replicate
//! or trial produces the same numbers whether it runs first, last, or on
//! another thread.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SubstreamRng = ChaCha8Rng;

/// Generator for substream `stream` of `seed`.
pub fn substream(seed: u64, stream: u64) -> SubstreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Packs a two-level index (outer, inner) into a single stream id.
pub fn stream_id(outer: u32, inner: u32) -> u64 {
    (u64::from(outer) << 32) | u64::from(inner)
}
