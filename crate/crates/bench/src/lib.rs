//! Inputs shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use rx3_core::{BipartiteColoring, Color, ColorCode};

/// Uniform codes over `1..=k`, reproducible from `seed`.
pub fn random_coloring(t: usize, k: Color, seed: u64) -> BipartiteColoring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let codes = (0..t).map(|_| ColorCode::new(rng.random_range(1..=k), rng.random_range(1..=k))).collect();
    BipartiteColoring::new(k, codes).expect("codes are in range")
}
