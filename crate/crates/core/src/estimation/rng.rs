//! Seeded substreams.
//!
//! Sample `i` of a run with seed `s` is drawn from ChaCha8 stream
//! `i / CHUNK_SIZE` keyed by `s`, consuming the stream in order. Chunks are
//! therefore independent and can be generated on any thread.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const CHUNK_SIZE: usize = 1 << 14;

pub fn substream(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// `(chunk index, number of draws)` covering `n` draws.
pub fn chunks(n: usize) -> impl Iterator<Item = (u64, usize)> {
    (0..n.div_ceil(CHUNK_SIZE)).map(move |c| (c as u64, CHUNK_SIZE.min(n - c * CHUNK_SIZE)))
}
