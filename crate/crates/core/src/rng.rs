//! Counter-based random streams.
//!
//! Every draw is addressed by `(seed, index)`: the ChaCha8 key is derived
//! from `seed` and the stream id is `index`, so sample `k` of a run is the
//! same no matter how many other samples are drawn or in which order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::C64;
use crate::quantum::StateVector;

/// Independent generator for sample `index` of the run keyed by `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform draw in [0, 1) for sample `index`.
pub fn uniform(seed: u64, index: u64) -> f64 {
    stream(seed, index).random::<f64>()
}

/// Haar-random pure state: a normalized vector of i.i.d. complex Gaussians.
pub fn haar_state(dim: usize, seed: u64, index: u64) -> StateVector {
    let mut rng = stream(seed, index);
    loop {
        let amps: Vec<C64> = (0..dim)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        // a zero vector has probability zero, but retry rather than panic
        if let Ok(s) = StateVector::normalized(amps) {
            return s;
        }
    }
}
